int main() {
    int a, b, s;
    scanf("%d %d", &a, &b);
    s = a;
    if (b < a) {
        s = b;
    }
    printf("%d\n", s);
    s = b;
    if (a > b) {
        s = a;
    }
    printf("%d\n", s);
    return 0;
}
