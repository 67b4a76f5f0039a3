int mini(int a, int b) {
    if (a < b) {
        return a;
    }
    return b;
}

int maxi(int a, int b) {
    if (a > b) {
        return a;
    }
    return b;
}

int main() {
    int p, q, r, lo, hi, mid;
    scanf("%d %d %d", &p, &q, &r);
    lo = mini(mini(p, q), r);
    hi = maxi(maxi(p, q), r);
    mid = p + q + r - lo - hi;
    printf("%d %d %d\n", lo, mid, hi);
    return 0;
}
