#pragma once

#include <string>

namespace famalyze {

// Scalability family: n features A1..An with domain [0,k-1] and a body of
// n chained #if-s "#if (Ai == 0) i := i + 1; #else i := 0; #endif".
// Features are declared An first so that the constraint order places the
// later tests nearer the root, which is what keeps the final tree at n+1
// leaves.
std::string gen_test(int n, int k);

} // namespace famalyze
