int part(int value, int unit, int wrap) {
    return value / unit % wrap;
}

int main() {
    int t, hh, mm, ss;
    scanf("%d", &t);
    hh = t / 3600;
    mm = part(t, 60, 60);
    ss = part(t, 1, 60);
    printf("%02d:%02d:%02d\n", hh, mm, ss);
    return 0;
}
