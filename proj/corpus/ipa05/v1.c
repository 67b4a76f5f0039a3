int main() {
    int limit, k;
    scanf("%d", &limit);
    k = 1;
    while (k <= limit) {
        printf("%d\n", k);
        k = k + 1;
    }
    return 0;
}
