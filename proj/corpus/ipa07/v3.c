int main() {
    int n, cand, hits;
    scanf("%d", &n);
    hits = 0;
    cand = n;
    while (cand >= 1) {
        if (n % cand == 0) {
            hits = hits + 1;
        }
        cand = cand - 1;
    }
    printf("%d\n", hits);
    return 0;
}
