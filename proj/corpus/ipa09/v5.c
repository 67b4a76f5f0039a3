int div_floor(int a, int b) {
    return a / b;
}

int main() {
    int total, hh, mm, ss;
    scanf("%d", &total);
    hh = div_floor(total, 3600);
    mm = div_floor(total - hh * 3600, 60);
    ss = total - hh * 3600 - mm * 60;
    printf("%02d:%02d:%02d\n", hh, mm, ss);
    return 0;
}
