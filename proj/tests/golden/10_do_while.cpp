void h() {
  int i = 0;
  do {
    i++;
  } while (i < 3);
}
