#include "famalyze/gen.hpp"

#include <sstream>
#include <stdexcept>

namespace famalyze {

std::string gen_test(int n, int k) {
  if (n < 1 || k < 1)
    throw std::invalid_argument("gen_test requires n >= 1 and k >= 1");
  std::ostringstream os;
  for (int i = n; i >= 1; --i)
    os << "#feature A" << i << " in [0," << k - 1 << "]\n";
  os << "int i := 0;\n";
  for (int i = 1; i <= n; ++i)
    os << "#if (A" << i << " == 0) i := i + 1; #else i := 0; #endif\n";
  return os.str();
}

} // namespace famalyze
