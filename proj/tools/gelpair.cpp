#include <iostream>
int main() { std::cerr << "gelpair: not wired up yet\n"; return 1; }
