int divides(int num, int den) {
    if (num % den == 0) {
        return 1;
    }
    return 0;
}

int main() {
    int x, y;
    scanf("%d %d", &x, &y);
    if (divides(x, y)) {
        printf("yes\n");
    } else {
        printf("no\n");
    }
    return 0;
}
