#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "densekit/ingest.hpp"

using namespace densekit;

namespace {

EmbeddingSet parse(const std::string& text) {
    std::istringstream in(text);
    return parse_embedding_csv(in);
}

AccuracyTable parse_acc(const std::string& text) {
    std::istringstream in(text);
    return parse_accuracy_table(in);
}

} // namespace

TEST_CASE("embedding csv: minimal well-formed file") {
    const auto set = parse("id,label,d0,d1,d2\n0,0,1.0,2.0,3.0\n1,1,-1.0,0.5,0.25\n");
    CHECK(set.dims() == 3);
    CHECK(set.num_classes() == 2);
    CHECK(set.size() == 2);
    CHECK(set.samples()[1].coords[2] == doctest::Approx(0.25));
}

TEST_CASE("embedding csv: single class rejected") {
    CHECK_THROWS_WITH_AS(parse("id,label,d0\n0,0,1.0\n1,0,2.0\n"),
                         "ingest: fewer than 2 classes", DataError);
}

TEST_CASE("embedding csv: class index sizes match an independent line count") {
    // 60,000 rows, labels drawn unevenly; the oracle tallies labels straight
    // off the text lines, bypassing the parser.
    std::ostringstream file;
    file << "id,label,d0,d1\n";
    std::map<int, std::size_t> expected;
    std::mt19937_64 rng(7);
    for (int i = 0; i < 60000; ++i) {
        const int label = static_cast<int>(rng() % 10);
        ++expected[label];
        file << i << ',' << label << ',' << (label + 0.5) << ',' << (i % 13) << '\n';
    }
    const auto set = parse(file.str());
    REQUIRE(set.num_classes() == 10);
    REQUIRE(set.size() == 60000);
    for (int cls = 0; cls < 10; ++cls)
        CHECK(set.class_rows(cls).size() == expected[cls]);
}

TEST_CASE("embedding csv: malformed inputs rejected") {
    CHECK_THROWS_AS(parse(""), DataError);
    CHECK_THROWS_AS(parse("id,name,d0\n0,0,1\n1,1,2\n"), DataError);          // bad header
    CHECK_THROWS_AS(parse("id,label,d0,d9\n0,0,1,1\n1,1,2,2\n"), DataError);  // bad dim name
    CHECK_THROWS_AS(parse("id,label,d0,d1\n0,0,1\n1,1,2,2\n"), DataError);    // arity
    CHECK_THROWS_AS(parse("id,label,d0\n0,0,nan\n1,1,2\n"), DataError);       // non-finite
    CHECK_THROWS_AS(parse("id,label,d0\n0,0,inf\n1,1,2\n"), DataError);
    CHECK_THROWS_AS(parse("id,label,d0\n0,0,1\n0,1,2\n"), DataError);         // duplicate id
    CHECK_THROWS_AS(parse("id,label,d0\n0,0,1\n1,2,2\n"), DataError);         // label gap
    CHECK_THROWS_AS(parse("id,label,d0\n0,0,xyz\n1,1,2\n"), DataError);       // junk number
}

TEST_CASE("embedding csv: every single-field mutation of a valid file is rejected") {
    const std::string valid = "id,label,d0,d1\n0,0,1.0,2.0\n1,1,3.0,4.0\n2,0,5.0,6.0\n";
    CHECK_NOTHROW(parse(valid));
    const std::vector<std::string> mutations = {
        "idx,label,d0,d1\n0,0,1.0,2.0\n1,1,3.0,4.0\n2,0,5.0,6.0\n",
        "id,label,d0,d1\n0,0,1.0\n1,1,3.0,4.0\n2,0,5.0,6.0\n",
        "id,label,d0,d1\n0,0,1.0,2.0,9.0\n1,1,3.0,4.0\n2,0,5.0,6.0\n",
        "id,label,d0,d1\n0,0,1.0,2.0\n0,1,3.0,4.0\n2,0,5.0,6.0\n",
        "id,label,d0,d1\n0,0,1.0,2.0\n1,1,3.0,inf\n2,0,5.0,6.0\n",
        "id,label,d0,d1\n0,0,1.0,2.0\n1,-1,3.0,4.0\n2,0,5.0,6.0\n",
        "id,label,d0,d1\n0,0,1.0,2.0\n1,3,3.0,4.0\n2,0,5.0,6.0\n",
    };
    for (const auto& text : mutations)
        CHECK_THROWS_AS(parse(text), DataError);
}

TEST_CASE("embedding csv: serialize/parse round trip") {
    const auto set = parse("id,label,d0,d1\n7,0,0.1,0.2\n9,1,0.3,0.4\n8,0,-0.5,1e-17\n");
    const auto text = embedding_set_to_csv(set);
    const auto again = parse(text);
    REQUIRE(again.size() == set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        CHECK(again.samples()[i].id == set.samples()[i].id);
        CHECK(again.samples()[i].label == set.samples()[i].label);
        CHECK(again.samples()[i].coords == set.samples()[i].coords);
    }
}

namespace {

std::string be32(std::uint32_t v) {
    std::string s;
    s += static_cast<char>(v >> 24);
    s += static_cast<char>((v >> 16) & 0xff);
    s += static_cast<char>((v >> 8) & 0xff);
    s += static_cast<char>(v & 0xff);
    return s;
}

} // namespace

TEST_CASE("idx: hand-crafted two-image fixture") {
    std::string images = be32(0x803) + be32(2) + be32(2) + be32(2);
    for (int b = 0; b < 8; ++b)
        images += static_cast<char>(b * 36);
    std::string labels = be32(0x801) + be32(2);
    labels += static_cast<char>(0);
    labels += static_cast<char>(1);

    std::istringstream img(images), lab(labels);
    const auto set = parse_idx(img, lab);
    REQUIRE(set.vectors.size() == 2);
    CHECK(set.dim == 4);
    CHECK(set.labels == std::vector<int>{0, 1});
    CHECK(set.ids == std::vector<std::int64_t>{0, 1});
    for (int b = 0; b < 8; ++b)
        CHECK(set.vectors[static_cast<std::size_t>(b / 4)][static_cast<std::size_t>(b % 4)] ==
              doctest::Approx(b * 36 / 255.0));
}

TEST_CASE("idx: bad magic / truncation / count mismatch") {
    const std::string good_images = be32(0x803) + be32(1) + be32(1) + be32(2) + "ab";
    const std::string good_labels = be32(0x801) + be32(1) + "x";
    {
        std::istringstream img(good_images), lab(be32(0x802) + be32(1) + "x");
        CHECK_THROWS_AS(parse_idx(img, lab), DataError);
    }
    {
        std::istringstream img(be32(0x801) + be32(1) + be32(1) + be32(2) + "ab"), lab(good_labels);
        CHECK_THROWS_AS(parse_idx(img, lab), DataError);
    }
    {
        std::istringstream img(be32(0x803) + be32(2) + be32(1) + be32(2) + "ab"),
            lab(be32(0x801) + be32(1) + "x");
        CHECK_THROWS_AS(parse_idx(img, lab), DataError);  // count mismatch
    }
    {
        std::istringstream img(be32(0x803) + be32(2) + be32(1) + be32(2) + "abc"),
            lab(be32(0x801) + be32(2) + "xy");
        CHECK_THROWS_AS(parse_idx(img, lab), DataError);  // truncated pixels
    }
    {
        std::istringstream img(good_images.substr(0, 6)), lab(good_labels);
        CHECK_THROWS_AS(parse_idx(img, lab), DataError);  // truncated header
    }
}

TEST_CASE("idx: write/parse round trip is the identity") {
    RawVectorSet set;
    set.dim = 9;
    std::mt19937_64 rng(123);
    for (int i = 0; i < 10; ++i) {
        set.ids.push_back(i);
        set.labels.push_back(static_cast<int>(rng() % 10));
        std::vector<double> v(set.dim);
        for (auto& x : v)
            x = static_cast<double>(rng() % 256) / 255.0;
        set.vectors.push_back(std::move(v));
    }
    std::ostringstream img_out, lab_out;
    write_idx(set, img_out, lab_out);
    std::istringstream img_in(img_out.str()), lab_in(lab_out.str());
    const auto again = parse_idx(img_in, lab_in);
    CHECK(again.ids == set.ids);
    CHECK(again.labels == set.labels);
    CHECK(again.dim == set.dim);
    CHECK(again.vectors == set.vectors);  // bit-exact
}

TEST_CASE("accuracy table: percent and fraction forms") {
    const auto table = parse_acc("class,accuracy\n0,99.94%\n1,0.5\n");
    CHECK(table.rows.at(0) == doctest::Approx(0.9994));
    CHECK(table.rows.at(1) == doctest::Approx(0.5));
}

TEST_CASE("accuracy table: rejects bad rows") {
    CHECK_THROWS_AS(parse_acc("class,accuracy\n0,1.2\n"), DataError);         // out of range
    CHECK_THROWS_AS(parse_acc("class,accuracy\n0,120%\n"), DataError);
    CHECK_THROWS_AS(parse_acc("class,accuracy\n0,0.5\n0,0.6\n"), DataError);  // duplicate
    CHECK_THROWS_AS(parse_acc("klass,accuracy\n0,0.5\n"), DataError);
    CHECK_THROWS_AS(parse_acc("class,accuracy\n-1,0.5\n"), DataError);
    CHECK_THROWS_AS(parse_acc(""), DataError);
}

TEST_CASE("trial summaries: csv and inline forms") {
    std::istringstream in(
        "target,mean,std_pop,n_trials\nbaseline,0.99716,0.000162481,5\n1.0,0.99714,0.00008,5\n");
    const auto table = parse_trials_csv(in);
    REQUIRE(table.baseline.has_value());
    CHECK(table.baseline->mean == doctest::Approx(0.99716));
    CHECK(table.by_target.at(1.0).n_trials == 5);

    const auto s = parse_trial_summary("0.99682,0.000116619,5");
    CHECK(s.mean == doctest::Approx(0.99682));
    CHECK(s.std_pop == doctest::Approx(0.000116619));
    CHECK(s.n_trials == 5);
    CHECK_THROWS_AS(parse_trial_summary("0.5,0.1"), DataError);
    CHECK_THROWS_AS(parse_trial_summary("1.5,0.1,5"), DataError);
    CHECK_THROWS_AS(parse_trial_summary("0.5,-0.1,5"), DataError);
}
