#include <iostream>
int main() { std::cerr << "datagen: not wired up yet\n"; return 1; }
