int tally(int n, int want_count) {
    int acc;
    acc = 0;
    while (n > 0) {
        if (want_count) {
            acc = acc + 1;
        } else {
            acc = acc + n % 10;
        }
        n = n / 10;
    }
    return acc;
}

int main() {
    int v;
    scanf("%d", &v);
    printf("%d\n", tally(v, 1));
    printf("%d\n", tally(v, 0));
    return 0;
}
