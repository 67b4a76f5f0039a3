int main() {
    int n, d, left;
    scanf("%d %d", &n, &d);
    left = n;
    while (left >= d) {
        left = left - d;
    }
    if (left == 0) {
        printf("yes\n");
    } else {
        printf("no\n");
    }
    return 0;
}
