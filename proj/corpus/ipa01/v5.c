int pick(int a, int b) {
    if (b < a) {
        return a;
    }
    return b;
}

int main() {
    int u, v, w;
    scanf("%d %d %d", &u, &v, &w);
    printf("%d\n", pick(pick(u, v), w));
    return 0;
}
