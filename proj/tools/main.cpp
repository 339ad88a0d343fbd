#include <cstdio>

int main(int, char**) {
  std::fprintf(stderr, "nnv: command-line front end not wired up yet\n");
  return 2;
}
