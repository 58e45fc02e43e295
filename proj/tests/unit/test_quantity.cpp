#include <gtest/gtest.h>

#include "ramanecho/io/quantity.hpp"

using namespace ramanecho;
using io::Dimension;
using io::parse_quantity;

TEST(Quantity, Frequencies) {
  EXPECT_DOUBLE_EQ(parse_quantity("50 kHz", Dimension::frequency, "f"), 50.0);
  EXPECT_DOUBLE_EQ(parse_quantity("2.5 MHz", Dimension::frequency, "f"), 2500.0);
  EXPECT_DOUBLE_EQ(parse_quantity("4 GHz", Dimension::frequency, "f"), 4e6);
  EXPECT_DOUBLE_EQ(parse_quantity("1500Hz", Dimension::frequency, "f"), 1.5);
  EXPECT_DOUBLE_EQ(parse_quantity("100 krad/s", Dimension::frequency, "f"), 100.0 / units::two_pi);
  EXPECT_DOUBLE_EQ(parse_quantity("-20 kHz", Dimension::frequency, "f"), -20.0);
}

TEST(Quantity, Times) {
  EXPECT_DOUBLE_EQ(parse_quantity("400 ns", Dimension::time, "t"), 0.4);
  EXPECT_DOUBLE_EQ(parse_quantity("10 us", Dimension::time, "t"), 10.0);
  EXPECT_DOUBLE_EQ(parse_quantity("10 \xC2\xB5s", Dimension::time, "t"), 10.0);
  EXPECT_DOUBLE_EQ(parse_quantity("0.1 ms", Dimension::time, "t"), 100.0);
}

TEST(Quantity, Angles) {
  EXPECT_DOUBLE_EQ(parse_quantity("2pi", Dimension::angle, "a"), units::two_pi);
  EXPECT_DOUBLE_EQ(parse_quantity("1.8 pi", Dimension::angle, "a"), 1.8 * units::pi);
  EXPECT_DOUBLE_EQ(parse_quantity("pi", Dimension::angle, "a"), units::pi);
  EXPECT_DOUBLE_EQ(parse_quantity("0.5 rad", Dimension::angle, "a"), 0.5);
}

TEST(Quantity, RejectsMissingOrWrongUnits) {
  EXPECT_THROW(parse_quantity("50", Dimension::frequency, "f"), ValidationError);
  EXPECT_THROW(parse_quantity("50 kHz", Dimension::time, "t"), ValidationError);
  EXPECT_THROW(parse_quantity("1 s^-1", Dimension::frequency, "f"), ValidationError);
  EXPECT_THROW(parse_quantity("fast", Dimension::frequency, "f"), ValidationError);
  EXPECT_THROW(parse_quantity("1e999 kHz", Dimension::frequency, "f"), ValidationError);
  EXPECT_THROW(parse_quantity("pi", Dimension::time, "t"), ValidationError);
}

TEST(Quantity, ErrorNamesField) {
  try {
    parse_quantity("25 cm^-1", Dimension::frequency, "system.gamma31");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("system.gamma31"), std::string::npos);
  }
}
