int main() {
    int size, idx;
    float x, total, result;
    scanf("%d", &size);
    total = 0;
    idx = 0;
    while (idx != size) {
        scanf("%f", &x);
        total = total + x;
        idx++;
    }
    result = total / size;
    printf("%.2f", result);
    return 0;
}
