#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tgideal/matrix_market.hpp"
#include "tgideal/random.hpp"
#include "tgideal/report.hpp"

using namespace tgideal;

TEST_CASE("read dense array files") {
    std::istringstream in(
        "%%MatrixMarket matrix array real general\n"
        "% the worked 3x3 system\n"
        "3 3\n"
        "2\n-1\n1\n"
        "-1\n2\n-1\n"
        "1\n-1\n2\n");
    const DenseMatrix a = read_matrix_market(in);
    CHECK(testing::rel_diff(a, DenseMatrix::from_rows({{2, -1, 1}, {-1, 2, -1}, {1, -1, 2}})) ==
          0.0);
}

TEST_CASE("read coordinate symmetric files with duplicate folding") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "3 3 3\n"
        "1 1 2.0\n"
        "2 1 -1.0\n"
        "2 2 2.0\n");
    const DenseMatrix a = read_matrix_market(in);
    CHECK(testing::rel_diff(a, DenseMatrix::from_rows({{2, -1, 0}, {-1, 2, 0}, {0, 0, 0}})) ==
          0.0);

    // Off-diagonal entries mirror; unlisted entries stay zero.
    std::istringstream two(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "2 2 2\n"
        "1 1 2.0\n"
        "2 1 -1.0\n");
    const DenseMatrix b = read_matrix_market(two);
    CHECK(testing::rel_diff(b, DenseMatrix::from_rows({{2, -1}, {-1, 0}})) == 0.0);

    std::istringstream dup(
        "%%MatrixMarket matrix coordinate real general\n"
        "2 2 3\n"
        "1 1 1.0\n"
        "1 1 2.5\n"
        "2 2 4.0\n");
    const DenseMatrix d = read_matrix_market(dup);
    CHECK(d(0, 0) == 3.5);
    CHECK(d(1, 1) == 4.0);
}

TEST_CASE("reader rejects malformed input") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_matrix_market(empty), ParseError);

    std::istringstream complex_field(
        "%%MatrixMarket matrix array complex general\n1 1\n1.0 2.0\n");
    CHECK_THROWS_AS(read_matrix_market(complex_field), UnsupportedFieldError);

    std::istringstream pattern(
        "%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n");
    CHECK_THROWS_AS(read_matrix_market(pattern), UnsupportedFieldError);

    std::istringstream bad_number(
        "%%MatrixMarket matrix array real general\n1 1\nnotanumber\n");
    try {
        read_matrix_market(bad_number);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }

    std::istringstream truncated("%%MatrixMarket matrix array real general\n2 2\n1.0\n");
    CHECK_THROWS_AS(read_matrix_market(truncated), ParseError);

    CHECK_THROWS_AS(read_matrix_market("/nonexistent/path.mtx"), IoError);
}

TEST_CASE("matrix market round-trip is bit exact") {
    rnd::Rng rng(51);
    for (int rep = 0; rep < 5; ++rep) {
        const DenseMatrix m = rnd::gaussian(rng, 3 + rep, 2 + rep);
        std::ostringstream out;
        write_matrix_market(out, m);
        std::istringstream in(out.str());
        const DenseMatrix back = read_matrix_market(in);
        REQUIRE(back.rows() == m.rows());
        REQUIRE(back.cols() == m.cols());
        for (std::size_t k = 0; k < m.entries().size(); ++k) {
            CHECK(back.entries()[k] == m.entries()[k]);  // exact, not approximate
        }
    }
}

TEST_CASE("report documents round-trip and stay deterministic") {
    ReportDocument doc;
    doc.set_command("classify");
    doc.set_tolerance("tol", 1e-8);
    ClassificationReport rep;
    rep.in_pstar = true;
    rep.in_p1 = true;
    rep.in_p2 = true;
    rep.lambda_min_ax = 0.5;
    rep.lambda_min_bx = 0.5;
    rep.tol = 1e-8;
    rep.rank_tol = 1e-8;
    doc.root()["classification"] = to_json(rep);
    doc.add_verdict("consistent", true);

    const std::string payload = doc.dump();
    CHECK(payload == doc.dump());  // reproducible serialization
    CHECK(payload.find("\"in_pstar\": true") != std::string::npos);

    const std::string path = "report_roundtrip_test.json";
    doc.write(path);
    const ReportDocument back = ReportDocument::read(path);
    CHECK(back.dump() == payload);
    CHECK(back.all_verdicts_pass());
    std::remove(path.c_str());
}

TEST_CASE("reports refuse non-finite numbers") {
    MeasureReport rep;
    rep.mu_star = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(to_json(rep), InvalidArgumentError);

    ReportDocument doc;
    doc.root()["raw"] = 1.0;
    CHECK_NOTHROW(doc.dump());
}

TEST_CASE("file digests are content addressed") {
    const std::string p1 = "digest_a.tmp";
    const std::string p2 = "digest_b.tmp";
    std::ofstream(p1) << "content one";
    std::ofstream(p2) << "content two";
    CHECK(digest_file(p1) == digest_file(p1));
    CHECK(digest_file(p1) != digest_file(p2));
    CHECK(digest_file(p1).size() == 16);
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}
