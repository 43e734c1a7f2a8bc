// Acceptance suite: one pass/fail line per criterion. Placeholder during bring-up.
#include <cstdio>
int main() { std::printf("acceptance: placeholder\n"); return 1; }
