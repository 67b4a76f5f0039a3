int main() {
    int x, y, z, mn, mx, mid;
    scanf("%d %d %d", &x, &y, &z);
    mn = x;
    if (y < mn) {
        mn = y;
    }
    if (z < mn) {
        mn = z;
    }
    mx = x;
    if (y > mx) {
        mx = y;
    }
    if (z > mx) {
        mx = z;
    }
    mid = x + y + z - mn - mx;
    printf("%d %d %d\n", mn, mid, mx);
    return 0;
}
