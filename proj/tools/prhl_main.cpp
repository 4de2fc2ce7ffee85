#include <iostream>
int main() { std::cout << "prhl cli stub\n"; return 2; }
