#include <cstdio>

int main() {
    std::puts("sgbench: command-line surface under construction");
    return 0;
}
