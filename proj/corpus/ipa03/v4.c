int remainder_of(int a, int b) {
    return a % b;
}

int main() {
    int n, m, rem;
    scanf("%d %d", &n, &m);
    rem = remainder_of(n, m);
    if (rem == 0) {
        printf("yes\n");
    } else {
        printf("no\n");
    }
    return 0;
}
