/*
   Copyright 2026 The rismac Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "rismac/config.hpp"
#include "rismac/config_io.hpp"
#include "rismac/threshold_table.hpp"

namespace {

using namespace rismac;

const ThresholdTable& reference_table() {
    static const ThresholdTable t = build_threshold_table(reference_network());
    return t;
}

std::string text_of(const ThresholdTable& t) {
    std::ostringstream out;
    write_table(out, t);
    return out.str();
}

ThresholdTable parse(const std::string& s) {
    std::istringstream in(s);
    return read_table(in);
}

std::string replace_line(std::string text, const std::string& key, const std::string& line) {
    const auto at = text.find("\n" + key + " =");
    EXPECT_NE(at, std::string::npos) << key;
    const auto end = text.find('\n', at + 1);
    return text.replace(at + 1, end - at - 1, line);
}

TEST(ThresholdTable, ReferenceContents) {
    const ThresholdTable& t = reference_table();
    EXPECT_EQ(t.config_hash, config_hash(reference_network()));
    EXPECT_NEAR(t.lambda_star, 6.19708, 1e-4);
    EXPECT_LT(std::abs(t.residual), 1e-6);
    EXPECT_EQ(t.pairs.size(), 8u);
    EXPECT_EQ(t.kstar().size(), 8u);
    for (const PairThresholds& p : t.pairs) {
        EXPECT_TRUE(p.member);
        EXPECT_LT(p.zeta, p.eta);
    }
    EXPECT_FALSE(t.is_member(8));
}

TEST(ThresholdTable, RoundTripIsBitExact) {
    const ThresholdTable& t = reference_table();
    const ThresholdTable back = parse(text_of(t));
    EXPECT_EQ(back, t);
    EXPECT_EQ(text_of(back), text_of(t));
}

TEST(ThresholdTable, SaveAndLoad) {
    const std::string path = ::testing::TempDir() + "/rismac_table.txt";
    save_table(path, reference_table());
    EXPECT_EQ(load_table(path), reference_table());
    EXPECT_THROW(load_table(::testing::TempDir() + "/does/not/exist"), std::runtime_error);
}

TEST(ThresholdTable, ResolveIsIdempotent) {
    EXPECT_EQ(build_threshold_table(reference_network()), reference_table());
}

TEST(ThresholdTable, MalformedFilesAreRejected) {
    const std::string good = text_of(reference_table());
    EXPECT_THROW(parse(replace_line(good, "format", "format = other/2")), std::runtime_error);
    EXPECT_THROW(parse(replace_line(good, "lambda_star", "lambda_star = six")), std::runtime_error);
    EXPECT_THROW(parse(replace_line(good, "pair.3.zeta", "pair.3.zeta = 1")), std::runtime_error);
    EXPECT_THROW(parse(replace_line(good, "pair.2.member", "pair.2.member = 2")), std::runtime_error);
    EXPECT_THROW(parse(replace_line(good, "pairs", "pairs = 0")), std::runtime_error);
    EXPECT_THROW(parse(replace_line(good, "pair.8.eta", "")), std::runtime_error);
    EXPECT_THROW(parse(good + "no equals sign\n"), std::runtime_error);
}

TEST(ThresholdTable, MismatchedConfigIsRejected) {
    NetworkConfig other = reference_network();
    EXPECT_NO_THROW(check_table_matches(reference_table(), other));
    other.tx_power_w *= 2.0;
    EXPECT_THROW(check_table_matches(reference_table(), other), std::invalid_argument);
    other = reference_network();
    other.sources.pop_back();
    other.destinations.pop_back();
    other.access_prob.pop_back();
    EXPECT_THROW(check_table_matches(reference_table(), other), std::invalid_argument);
}

TEST(ThresholdTable, ZeroBudgetTableHasNoMembers) {
    NetworkConfig cfg = reference_network();
    cfg.rx_gain = 0.0;
    const ThresholdTable t = build_threshold_table(cfg);
    EXPECT_EQ(t.lambda_star, 0.0);
    EXPECT_TRUE(t.kstar().empty());
    EXPECT_EQ(parse(text_of(t)), t);
}

}  // namespace
