int main() {
    int n, d, found;
    scanf("%d", &n);
    found = 0;
    for (d = n; d >= 1; d--) {
        if (n % d == 0) {
            found++;
        }
    }
    printf("%d\n", found);
    return 0;
}
