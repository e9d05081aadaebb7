vector<vector<int>> v;
int main() {
  v.push_back({});
  return v.size();
}
