#include <gtest/gtest.h>

#include "gop/error.hpp"
#include "gop/request.hpp"
#include "helpers.hpp"

using namespace gop;

namespace {

Error parse_error(const std::string& body) {
  try {
    parse_request(std::string_view(body));
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << body;
  return Error(ErrorKind::kIo, "");
}

Error resolve_error(const std::string& body,
                    std::shared_ptr<const ScoreGrid> g) {
  try {
    resolve(parse_request(std::string_view(body)), g);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "resolved: " << body;
  return Error(ErrorKind::kIo, "");
}

}  // namespace

TEST(Request, Defaults) {
  const auto r = parse_request(std::string_view(R"({"collection":"T07","measure":"AP"})"));
  EXPECT_EQ(r.collection, "T07");
  EXPECT_FALSE(r.topic);
  EXPECT_EQ(r.axis_order, kDefaultAxisOrder);
  EXPECT_EQ(r.scaling, Scaling::kFullRange);
  EXPECT_EQ(r.color_schema, ColorSchema::kByComponent);
  EXPECT_EQ(r.curve, "cubic");
}

TEST(Request, FullParse) {
  const auto r = parse_request(std::string_view(R"({
    "collection": "T07", "measure": "nDCG@20", "topic": 351,
    "visible": {"stemmer": ["krovetz", "porter"]},
    "axis_order": ["model", "stoplist", "stemmer"],
    "scaling": "minmax", "color_schema": "value", "curve": "linear",
    "selected": [{"axis": "stoplist", "level": "indri"}]})"));
  EXPECT_EQ(*r.topic, "351");
  EXPECT_EQ(r.visible.at(Axis::kStemmer).size(), 2u);
  EXPECT_EQ(r.axis_order[0], Axis::kModel);
  EXPECT_EQ(r.scaling, Scaling::kMinMax);
  EXPECT_EQ(r.color_schema, ColorSchema::kByValue);
  EXPECT_EQ(r.curve, "linear");
  ASSERT_EQ(r.selected.size(), 1u);
  EXPECT_EQ(r.selected[0].second, "indri");
}

TEST(Request, StructuralErrors) {
  EXPECT_EQ(parse_error("{not json").kind(), ErrorKind::kParse);
  EXPECT_EQ(parse_error("{not json").field(), "body");
  EXPECT_EQ(parse_error("[1]").kind(), ErrorKind::kInvalidArgument);
  EXPECT_EQ(parse_error(R"({"measure":"AP"})").field(), "collection");
  EXPECT_EQ(parse_error(R"({"collection":"T07","measure":"AP","bogus":1})").field(),
            "bogus");
  EXPECT_EQ(parse_error(R"({"collection":"T07","measure":"AP","scaling":"log"})").field(),
            "scaling");
  EXPECT_EQ(parse_error(R"({"collection":"T07","measure":"AP","curve":"bezier"})").field(),
            "curve");
  EXPECT_EQ(parse_error(R"({"collection":"T07","measure":"AP","axis_order":["model","model","stemmer"]})")
                .field(),
            "axis_order");
  EXPECT_EQ(parse_error(R"({"collection":"T07","measure":"AP","visible":{"stemmers":[]}})")
                .kind(),
            ErrorKind::kUnknownAxis);
}

TEST(Request, CanonicalJsonIsOrderIndependent) {
  const auto a = parse_request(std::string_view(
      R"({"measure":"AP","collection":"T07","scaling":"full"})"));
  const auto b = parse_request(std::string_view(R"({"collection":"T07","measure":"AP"})"));
  EXPECT_EQ(canonical_json(a).dump(), canonical_json(b).dump());
  const auto back = parse_request(nlohmann::json::parse(canonical_json(a).dump()));
  EXPECT_EQ(canonical_json(back).dump(), canonical_json(a).dump());
}

TEST(Request, ResolveAgainstGrid) {
  const auto g = testutil::paper_grid();
  const auto r = resolve(parse_request(std::string_view(R"({
    "collection":"T07","measure":"P@10","topic":"360",
    "visible":{"stemmer":["krovetz"]},
    "selected":[{"axis":"stemmer","level":"krovetz"}]})")), g);
  EXPECT_EQ(r.view.measure(), 1u);
  EXPECT_EQ(*r.view.topic(), 9u);
  EXPECT_EQ(r.view.visible_systems().size(), 102u);
  ASSERT_EQ(r.options.selected.size(), 1u);
}

TEST(Request, ResolveErrors) {
  const auto g = testutil::paper_grid();
  auto e = resolve_error(R"({"collection":"T07","measure":"Twist"})", g);
  EXPECT_EQ(e.kind(), ErrorKind::kUnknownMeasure);
  EXPECT_EQ(e.field(), "measure");
  e = resolve_error(R"({"collection":"T07","measure":"AP","topic":"1"})", g);
  EXPECT_EQ(e.kind(), ErrorKind::kUnknownTopic);
  e = resolve_error(R"({"collection":"T07","measure":"AP","visible":{"stemmer":["kstem"]}})", g);
  EXPECT_EQ(e.kind(), ErrorKind::kUnknownLevel);
  EXPECT_EQ(e.field(), "visible.stemmer");
  e = resolve_error(R"({"collection":"T07","measure":"AP","visible":{"model":[]}})", g);
  EXPECT_EQ(e.kind(), ErrorKind::kEmptyAxis);
  e = resolve_error(R"({"collection":"T07","measure":"AP","selected":[{"axis":"model","level":"bm99"}]})", g);
  EXPECT_EQ(e.kind(), ErrorKind::kUnknownLevel);
}
