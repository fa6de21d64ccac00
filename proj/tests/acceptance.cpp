#include "bprk/bprk.hpp"
int main() { return 0; }
