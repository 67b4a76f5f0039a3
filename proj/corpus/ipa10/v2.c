int digit_count(int n) {
    int c;
    c = 0;
    while (n > 0) {
        c = c + 1;
        n = n / 10;
    }
    return c;
}

int digit_sum(int n) {
    int s;
    s = 0;
    while (n > 0) {
        s = s + n % 10;
        n = n / 10;
    }
    return s;
}

int main() {
    int num;
    scanf("%d", &num);
    printf("%d\n", digit_count(num));
    printf("%d\n", digit_sum(num));
    return 0;
}
