// placeholder entry point; full CLI wired up with the analysis modules
#include <cstdio>
int main() {
    std::puts("bifurc: command-line interface not built yet");
    return 2;
}
