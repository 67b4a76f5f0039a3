float read_sum(int n) {
    int i;
    float v, s;
    s = 0;
    for (i = 0; i < n; i++) {
        scanf("%f", &v);
        s = s + v;
    }
    return s;
}

int main() {
    int n;
    float sum, avg;
    scanf("%d", &n);
    sum = read_sum(n);
    avg = sum / n;
    printf("%.2f", avg);
    return 0;
}
