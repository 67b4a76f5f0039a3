int smaller(int x, int y) {
    if (x < y) {
        return x;
    }
    return y;
}

int larger(int x, int y) {
    if (x > y) {
        return x;
    }
    return y;
}

int main() {
    int u, v;
    scanf("%d %d", &u, &v);
    printf("%d\n", smaller(u, v));
    printf("%d\n", larger(u, v));
    return 0;
}
