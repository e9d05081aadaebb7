void p(int n) {
	while (n) {
		if (n % 2) continue;
		n--;
	}
}
