int main() {
    int u, v, w, tmp, done;
    scanf("%d %d %d", &u, &v, &w);
    done = 0;
    while (!done) {
        done = 1;
        if (u > v) {
            tmp = u;
            u = v;
            v = tmp;
            done = 0;
        }
        if (v > w) {
            tmp = v;
            v = w;
            w = tmp;
            done = 0;
        }
    }
    printf("%d %d %d\n", u, v, w);
    return 0;
}
