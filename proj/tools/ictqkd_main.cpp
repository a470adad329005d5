#include <cstdio>

// TODO: dispatch into ictqkd::run_command once the cli module lands.
int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::fputs("ictqkd: command-line interface not wired up yet\n", stderr);
  return 2;
}
