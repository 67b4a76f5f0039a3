int main() {
    int first, second, low, high;
    scanf("%d %d", &first, &second);
    low = first;
    high = second;
    if (second < first) {
        low = second;
        high = first;
    }
    printf("%d\n%d\n", low, high);
    return 0;
}
