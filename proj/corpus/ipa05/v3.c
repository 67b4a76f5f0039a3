int main() {
    int total, idx;
    scanf("%d", &total);
    for (idx = 0; idx < total; idx++) {
        printf("%d\n", idx + 1);
    }
    return 0;
}
