int k(int c) {
  switch (c) {
    case 1:
      return 10;
    case 2:
      break;
    default:
      return 0;
  }
  return -1;
}
