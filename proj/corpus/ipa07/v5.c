int count_divisors(int n) {
    int i, c;
    c = 0;
    i = 1;
    while (i <= n) {
        if (n % i == 0) {
            c = c + 1;
        }
        i = i + 1;
    }
    return c;
}

int main() {
    int x;
    scanf("%d", &x);
    printf("%d\n", count_divisors(x));
    return 0;
}
