#include <iostream>

int main() {
    std::cout << "lplab placeholder\n";
    return 0;
}
