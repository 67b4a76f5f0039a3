int main() {
    int first, second, third, winner;
    scanf("%d %d %d", &first, &second, &third);
    winner = third;
    if (first >= second && first >= third) {
        winner = first;
    }
    if (second >= first && second >= third) {
        winner = second;
    }
    printf("%d\n", winner);
    return 0;
}
