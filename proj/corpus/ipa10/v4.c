int main() {
    int n, count, sum;
    scanf("%d", &n);
    count = 0;
    sum = 0;
    for (; n > 0; n = n / 10) {
        sum = sum + n % 10;
        count = count + 1;
    }
    printf("%d\n", count);
    printf("%d\n", sum);
    return 0;
}
