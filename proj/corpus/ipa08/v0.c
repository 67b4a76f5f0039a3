int main() {
    int n, i;
    float x, sum, avg;
    scanf("%d", &n);
    sum = 0;
    for (i = 0; i < n; i++) {
        scanf("%f", &x);
        sum = sum + x;
    }
    avg = sum / n;
    printf("%.2f", avg);
    return 0;
}
