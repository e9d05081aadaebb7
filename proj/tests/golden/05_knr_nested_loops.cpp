void f(int n) {
    for (int i = 0; i < n; i++) {
        while (n > 0) {
            n--;
        }
    }
}
