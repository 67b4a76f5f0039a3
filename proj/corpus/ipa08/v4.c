int main() {
    int n, j;
    float next, sum;
    scanf("%d", &n);
    sum = 0;
    for (j = n; j > 0; j--) {
        scanf("%f", &next);
        sum = sum + next;
    }
    printf("%.2f", sum / n);
    return 0;
}
