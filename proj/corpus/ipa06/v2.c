float fmin2(float a, float b) {
    if (a < b) {
        return a;
    }
    return b;
}

float fmax2(float a, float b) {
    if (a > b) {
        return a;
    }
    return b;
}

int main() {
    int n, i;
    float v, small, big;
    scanf("%d", &n);
    scanf("%f", &v);
    small = v;
    big = v;
    for (i = 1; i < n; i++) {
        scanf("%f", &v);
        small = fmin2(small, v);
        big = fmax2(big, v);
    }
    printf("min: %f, max: %f\n", small, big);
    return 0;
}
