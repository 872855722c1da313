#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "smpcert/cli.hpp"
#include "smpcert/families.hpp"
#include "smpcert/scalar.hpp"

namespace test {

inline smpcert::Scalar q(long num, long den = 1) { return smpcert::Scalar::exact(num, den); }

inline smpcert::Scalar qs(const char* text) {
  smpcert::Rational r(text);
  r.canonicalize();
  return smpcert::Scalar::exact(r);
}

inline smpcert::KappaContext c_of(long num, long den) {
  return smpcert::KappaContext::exact(smpcert::Rational(num, den));
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun run;
  run.code = smpcert::run_cli(args, out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

}  // namespace test
