int main() {
    int n, i;
    float a, b, c;
    scanf("%d", &n);
    scanf("%f", &a);
    b = a;
    c = a;
    i = 1;
    while (i < n) {
        scanf("%f", &a);
        if (a < b) {
            b = a;
        }
        if (c < a) {
            c = a;
        }
        i++;
    }
    printf("min: %f, max: %f\n", b, c);
    return 0;
}
