int main() {
    int x, y;
    scanf("%d %d", &x, &y);
    if (x <= y) {
        printf("%d\n", x);
        printf("%d\n", y);
    } else {
        printf("%d\n", y);
        printf("%d\n", x);
    }
    return 0;
}
