int main() {
    int count, seen;
    float value, lo, hi;
    scanf("%d", &count);
    scanf("%f", &value);
    lo = value;
    hi = value;
    seen = 1;
    while (seen < count) {
        scanf("%f", &value);
        if (value < lo) {
            lo = value;
        }
        if (value > hi) {
            hi = value;
        }
        seen = seen + 1;
    }
    printf("min: %f, max: %f\n", lo, hi);
    return 0;
}
