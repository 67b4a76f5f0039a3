int main() {
    int remaining, n;
    float entry, acc;
    scanf("%d", &n);
    acc = 0;
    remaining = n;
    while (remaining > 0) {
        scanf("%f", &entry);
        acc = acc + entry;
        remaining--;
    }
    printf("%.2f", acc / n);
    return 0;
}
