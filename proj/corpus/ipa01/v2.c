int max2(int u, int v) {
    if (u > v) {
        return u;
    }
    return v;
}

int main() {
    int n1, n2, n3, best;
    scanf("%d %d %d", &n1, &n2, &n3);
    best = max2(max2(n1, n2), n3);
    printf("%d\n", best);
    return 0;
}
