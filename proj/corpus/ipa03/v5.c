int main() {
    int num, div, q;
    scanf("%d %d", &num, &div);
    q = num / div;
    if (q * div == num) {
        printf("yes\n");
    } else {
        printf("no\n");
    }
    return 0;
}
