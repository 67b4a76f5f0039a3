int main() {
    int a, b, c, lo, hi;
    scanf("%d %d %d", &a, &b, &c);
    lo = a;
    hi = a;
    if (b < lo) {
        lo = b;
    }
    if (c < lo) {
        lo = c;
    }
    if (b > hi) {
        hi = b;
    }
    if (c > hi) {
        hi = c;
    }
    printf("%d %d %d\n", lo, a + b + c - lo - hi, hi);
    return 0;
}
