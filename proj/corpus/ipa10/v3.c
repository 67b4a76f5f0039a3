int main() {
    int n, len, acc, d;
    scanf("%d", &n);
    len = 0;
    acc = 0;
    while (n != 0) {
        d = n % 10;
        acc = acc + d;
        n = (n - d) / 10;
        len = len + 1;
    }
    printf("%d\n%d\n", len, acc);
    return 0;
}
