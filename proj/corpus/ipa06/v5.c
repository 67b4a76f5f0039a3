float keep_min(float cur, float x) {
    if (x < cur) {
        return x;
    }
    return cur;
}

float keep_max(float cur, float x) {
    if (x > cur) {
        return x;
    }
    return cur;
}

int main() {
    int count, k;
    float val, mn, mx;
    scanf("%d", &count);
    scanf("%f", &val);
    mn = val;
    mx = val;
    for (k = 1; k < count; k++) {
        scanf("%f", &val);
        mn = keep_min(mn, val);
        mx = keep_max(mx, val);
    }
    printf("min: %f, max: %f\n", mn, mx);
    return 0;
}
