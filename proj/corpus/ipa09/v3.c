int main() {
    int secs, h, m;
    scanf("%d", &secs);
    h = 0;
    m = 0;
    while (secs >= 3600) {
        h = h + 1;
        secs = secs - 3600;
    }
    while (secs >= 60) {
        m = m + 1;
        secs = secs - 60;
    }
    printf("%02d:%02d:%02d\n", h, m, secs);
    return 0;
}
