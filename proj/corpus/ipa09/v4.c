int main() {
    int t, h, m, s, rest;
    scanf("%d", &t);
    h = t / 3600;
    rest = t % 3600;
    m = rest / 60;
    s = rest % 60;
    printf("%02d:%02d:%02d\n", h, m, s);
    return 0;
}
