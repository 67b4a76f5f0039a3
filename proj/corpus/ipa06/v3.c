int main() {
    int n, left;
    float num, lowest, highest;
    scanf("%d", &n);
    scanf("%f", &num);
    lowest = num;
    highest = num;
    for (left = n - 1; left > 0; left--) {
        scanf("%f", &num);
        if (num < lowest) {
            lowest = num;
        }
        if (highest < num) {
            highest = num;
        }
    }
    printf("min: %f, max: %f\n", lowest, highest);
    return 0;
}
