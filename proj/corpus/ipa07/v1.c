int main() {
    int value, d, total;
    scanf("%d", &value);
    total = 0;
    d = 1;
    while (d <= value) {
        if (value % d == 0) {
            total++;
        }
        d++;
    }
    printf("%d\n", total);
    return 0;
}
