int main() {
    int stop, cur;
    scanf("%d", &stop);
    cur = 1;
    while (!(cur > stop)) {
        printf("%d\n", cur);
        cur = cur + 1;
    }
    return 0;
}
