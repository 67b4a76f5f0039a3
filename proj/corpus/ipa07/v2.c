int is_divisor(int n, int d) {
    if (n % d == 0) {
        return 1;
    }
    return 0;
}

int main() {
    int num, k, divisors;
    scanf("%d", &num);
    divisors = 0;
    for (k = 1; k <= num; k++) {
        divisors = divisors + is_divisor(num, k);
    }
    printf("%d\n", divisors);
    return 0;
}
