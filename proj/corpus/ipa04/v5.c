int smallest(int x, int y, int z) {
    int s;
    s = x;
    if (y < s) {
        s = y;
    }
    if (z < s) {
        s = z;
    }
    return s;
}

int biggest(int x, int y, int z) {
    int b;
    b = x;
    if (y > b) {
        b = y;
    }
    if (z > b) {
        b = z;
    }
    return b;
}

int main() {
    int p, q, r, low, high;
    scanf("%d %d %d", &p, &q, &r);
    low = smallest(p, q, r);
    high = biggest(p, q, r);
    printf("%d %d %d\n", low, p + q + r - low - high, high);
    return 0;
}
