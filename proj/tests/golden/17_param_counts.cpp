int zero() { return 0; }
int one(int a) { return a; }
int three(int a, int b, int c) { return a; }
