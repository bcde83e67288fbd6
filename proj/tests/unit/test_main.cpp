#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "sdcert/scalars/numeric.hpp"

int main(int argc, char** argv) {
  sdcert::PrecisionScope precision(128);
  doctest::Context context;
  context.applyCommandLine(argc, argv);
  return context.run();
}
