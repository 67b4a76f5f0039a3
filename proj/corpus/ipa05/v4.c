void emit(int upto) {
    int c;
    c = 0;
    while (c < upto) {
        c++;
        printf("%d\n", c);
    }
}

int main() {
    int n;
    scanf("%d", &n);
    emit(n);
    return 0;
}
