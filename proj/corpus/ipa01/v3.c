int main() {
    int p, q, r, biggest;
    scanf("%d", &p);
    scanf("%d", &q);
    scanf("%d", &r);
    biggest = p;
    if (biggest < q) {
        biggest = q;
    }
    if (biggest < r) {
        biggest = r;
    }
    printf("%d\n", biggest);
    return 0;
}
