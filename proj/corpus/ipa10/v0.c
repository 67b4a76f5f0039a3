int main() {
    int n, digits, sum;
    scanf("%d", &n);
    digits = 0;
    sum = 0;
    while (n > 0) {
        sum = sum + n % 10;
        n = n / 10;
        digits = digits + 1;
    }
    printf("%d\n", digits);
    printf("%d\n", sum);
    return 0;
}
