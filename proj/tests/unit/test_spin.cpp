#include <gtest/gtest.h>

#include "spinlimit/errors.hpp"
#include "spinlimit/spin.hpp"

using namespace spinlimit;

TEST(SpinNumber, DimensionAndJbar) {
  const SpinNumber half(1);
  EXPECT_EQ(half.dim(), 2);
  EXPECT_DOUBLE_EQ(half.value(), 0.5);
  EXPECT_DOUBLE_EQ(half.jbar(), 1.0);
  EXPECT_FALSE(half.is_integer());
  EXPECT_TRUE(SpinNumber::from_int(3).is_integer());
  EXPECT_EQ(SpinNumber::from_int(10).dim(), 21);
}

TEST(SpinNumber, RejectsNegative) { EXPECT_THROW(SpinNumber(-1), InvalidInputError); }

TEST(SpinNumber, Parse) {
  EXPECT_EQ(SpinNumber::parse("10").two_j(), 20);
  EXPECT_EQ(SpinNumber::parse("7/2").two_j(), 7);
  EXPECT_EQ(SpinNumber::parse("0.5").two_j(), 1);
  EXPECT_EQ(SpinNumber::parse("3.5").two_j(), 7);
  EXPECT_EQ(SpinNumber::parse("0").two_j(), 0);
  EXPECT_THROW(SpinNumber::parse("0.3"), InvalidInputError);
  EXPECT_THROW(SpinNumber::parse("3/4"), InvalidInputError);
  EXPECT_THROW(SpinNumber::parse("ten"), InvalidInputError);
  EXPECT_THROW(SpinNumber::parse("-1"), InvalidInputError);
  EXPECT_THROW(SpinNumber::parse(""), InvalidInputError);
}

TEST(SpinNumber, ToStringRoundTrips) {
  for (int two_j = 0; two_j < 30; ++two_j) {
    const SpinNumber j(two_j);
    EXPECT_EQ(SpinNumber::parse(j.to_string()), j);
  }
  EXPECT_EQ(SpinNumber(7).to_string(), "7/2");
  EXPECT_EQ(SpinNumber(8).to_string(), "4");
}

TEST(SpinNumber, DescendingIndexConvention) {
  const SpinNumber j(4);
  EXPECT_EQ(j.index_of(MagneticIndex(4)), 0);
  EXPECT_EQ(j.index_of(MagneticIndex(-4)), 4);
  for (int i = 0; i < j.dim(); ++i) EXPECT_EQ(j.index_of(j.at(i)), i);
}

TEST(SpinNumber, ContainsChecksRangeAndParity) {
  const SpinNumber j(3);
  EXPECT_TRUE(j.contains(MagneticIndex(3)));
  EXPECT_TRUE(j.contains(MagneticIndex(-1)));
  EXPECT_FALSE(j.contains(MagneticIndex(2)));
  EXPECT_FALSE(j.contains(MagneticIndex(5)));
  EXPECT_THROW(j.require(MagneticIndex(0)), InvalidInputError);
  EXPECT_NO_THROW(j.require(MagneticIndex(1)));
}

TEST(MagneticIndex, Basics) {
  const auto m = MagneticIndex::from_int(-2);
  EXPECT_EQ(m.two_m(), -4);
  EXPECT_DOUBLE_EQ(m.value(), -2.0);
  EXPECT_EQ((-m).two_m(), 4);
}

TEST(ParitySign, Values) {
  EXPECT_EQ(parity_sign(0), 1.0);
  EXPECT_EQ(parity_sign(3), -1.0);
  EXPECT_EQ(parity_sign(-3), -1.0);
  EXPECT_EQ(parity_sign(-4), 1.0);
}
