#include <doctest.h>

#include <string>

#include "quadbound/corpus.hpp"
#include "quadbound/error.hpp"

using namespace quadbound;

namespace {

std::string one_function(const std::string& body) {
    return R"J({"schema": 1, "functions": [)J" + body + "]}";
}

std::string input_error(const std::string& text) {
    try {
        parse_corpus(text);
    } catch (const InputError& err) {
        return err.what();
    }
    return {};
}

} // namespace

TEST_CASE("demo corpus") {
    const Corpus demo = demo_corpus();
    REQUIRE(demo.functions.size() == 5);
    CHECK(demo.functions[0].spec.name == "square");
    CHECK(demo.functions[2].spec.f4_sup == 24.0);
    CHECK_FALSE(demo.functions[4].spec.f4_sup.has_value());
    CHECK(demo.functions[3].f(0.0) == 0.0);
    CHECK(demo.functions[4].fprime(4.0) == doctest::Approx(20.0));

    const Corpus shipped = load_corpus(QUADBOUND_SOURCE_DIR "/data/demo_corpus.json");
    REQUIRE(shipped.functions.size() == demo.functions.size());
    for (std::size_t i = 0; i < demo.functions.size(); ++i) {
        const FunctionSpec& a = demo.functions[i].spec;
        const FunctionSpec& b = shipped.functions[i].spec;
        CHECK(a.name == b.name);
        CHECK(a.f_expr == b.f_expr);
        CHECK(a.fprime_expr == b.fprime_expr);
        CHECK(a.domain_b == b.domain_b);
        CHECK(a.claimed == b.claimed);
        CHECK(a.f4_sup == b.f4_sup);
    }
}

TEST_CASE("corpus validation errors") {
    CHECK(input_error("{not json").find("not valid JSON") != std::string::npos);
    CHECK(input_error("[]") == "corpus must be a JSON object");
    CHECK(input_error(R"J({"functions": []})J").find("schema") != std::string::npos);
    CHECK(input_error(R"J({"schema": 2, "functions": []})J").find("schema") != std::string::npos);
    CHECK(input_error(R"J({"schema": 1})J").find("functions") != std::string::npos);

    const std::string good = R"J({"name": "sq", "f": "x^2", "fprime": "2*x", "domain_b": 1})J";
    CHECK(parse_corpus(one_function(good)).functions.size() == 1);
    CHECK(input_error(one_function(good + "," + good)).find("duplicate") != std::string::npos);

    CHECK(input_error(one_function(R"J({"name": "sq", "f": "x^2", "fprime": "3*x", "domain_b": 1})J"))
              .find("fprime does not match") != std::string::npos);
    CHECK(input_error(one_function(R"J({"name": "sq", "f": "x^", "fprime": "2*x", "domain_b": 1})J"))
              .find("field 'f'") != std::string::npos);
    CHECK(input_error(one_function(R"J({"name": "sq", "f": "x^2", "fprime": "2*x", "domain_b": -1})J"))
              .find("domain_b") != std::string::npos);
    CHECK(input_error(one_function(R"J({"name": "sq", "f": "x^2", "fprime": "2*x"})J"))
              .find("missing field 'domain_b'") != std::string::npos);
    CHECK(input_error(one_function(
                          R"J({"name": "sq", "f": "x^2", "fprime": "2*x", "domain_b": 1, "claims": [{"alpha": 2, "m": 1, "q": 1}]})J"))
              .find("alpha") != std::string::npos);
    CHECK(input_error(one_function(
                          R"J({"name": "sq", "f": "x^2", "fprime": "2*x", "domain_b": 1, "f4_sup": -3})J"))
              .find("f4_sup") != std::string::npos);
    CHECK(input_error(one_function(R"J({"name": "lg", "f": "ln(x-1)", "fprime": "1/(x-1)", "domain_b": 2})J"))
              .find("fprime does not match") != std::string::npos);
    CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.json"), InputError);
}
