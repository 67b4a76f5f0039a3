int main() {
    int value, count, total, rest;
    scanf("%d", &value);
    count = 0;
    total = 0;
    for (rest = value; rest > 0; rest = rest / 10) {
        total = total + rest % 10;
        count++;
    }
    printf("%d\n", count);
    printf("%d\n", total);
    return 0;
}
