#include <sstream>

#include <gtest/gtest.h>

#include "kerrqnd/error.hpp"
#include "kerrqnd/resonator.hpp"

using namespace kerrqnd;

namespace {

ResonatorSpec caf2() { return load_resonator_preset(KERRQND_DATA_DIR "/caf2.preset"); }

}  // namespace

TEST(Resonator, PresetCouplingFactors) {
  const GammaFactors g = gamma_factors(caf2());
  EXPECT_NEAR(g.gamma_x, 8.486872322795109e-6, 1e-18);
  EXPECT_DOUBLE_EQ(g.gamma_s, g.gamma_x / 2);
  EXPECT_LT(std::abs(g.gamma_x - 0.85e-5) / 0.85e-5, 0.01);
}

TEST(Resonator, GammaScalesWithQAndVolume) {
  ResonatorSpec s = caf2();
  const double base = gamma_factors(s).gamma_x;
  s.q_load *= 2;
  EXPECT_NEAR(gamma_factors(s).gamma_x, 2 * base, 1e-18);
  s.v_eff *= 4;
  EXPECT_NEAR(gamma_factors(s).gamma_x, base / 2, 1e-18);
}

TEST(Resonator, LoadingVerdicts) {
  ResonatorSpec s = caf2();
  const LoadingReport r = loading_check(s, 0.9);
  EXPECT_EQ(r.verdict, LoadingVerdict::pass);
  EXPECT_NEAR(r.ratio, 1.0 / 30.0, 1e-15);
  EXPECT_NEAR(r.epsilon_sq, 1.0 / 9.0, 1e-15);

  s.q_intr = 1.5e11;  // ratio 1/15: between eps^2/3 and eps^2
  EXPECT_EQ(loading_check(s, 0.9).verdict, LoadingVerdict::marginal);
  s.q_intr = 5e10;
  EXPECT_EQ(loading_check(s, 0.9).verdict, LoadingVerdict::fail);
  EXPECT_EQ(to_string(LoadingVerdict::pass), "PASS");
  EXPECT_THROW(loading_check(s, 1.0), InvalidArgument);
}

TEST(Resonator, SuspiciousQOrdering) {
  ResonatorSpec s = caf2();
  EXPECT_FALSE(s.q_ordering_suspicious());
  s.q_intr = 1e9;
  EXPECT_TRUE(s.q_ordering_suspicious());
}

TEST(Resonator, ParseErrorsNameTheField) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_resonator_preset(in);
  };
  const std::string ok = "q_load=1e10\nq_intr=3e11\nn0=1.43\nn2=1.9e-20\nlambda0=1.55e-6\nv_eff=1.2e-15\n";
  EXPECT_NO_THROW(parse(ok + "# trailing comment\n"));
  try {
    parse("q_load=1e10\nq_intr=3e11\nn0=1.43\nn2=1.9e-20\nlambda0=1.55e-6\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "v_eff");
  }
  try {
    parse(ok + "colour=blue\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "colour");
  }
  try {
    parse("q_load=1e10x\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "q_load");
  }
  EXPECT_THROW(load_resonator_preset("/nonexistent/preset"), IoError);
}
