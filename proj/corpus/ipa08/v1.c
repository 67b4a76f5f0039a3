int main() {
    int count, done;
    float item, total, mean;
    scanf("%d", &count);
    total = 0;
    done = 0;
    while (done < count) {
        scanf("%f", &item);
        total = total + item;
        done = done + 1;
    }
    mean = total / count;
    printf("%.2f", mean);
    return 0;
}
