#include "icn5g/name.hpp"

#include <doctest.h>

#include <random>

using namespace icn5g;

TEST_CASE("parse splits on '/'")
{
  Name n = Name::parse("/traffic/monitor/seg1");
  CHECK(n.components() == std::vector<std::string>{"traffic", "monitor", "seg1"});
  CHECK(n.toUri() == "/traffic/monitor/seg1");
}

TEST_CASE("single component")
{
  Name n = Name::parse("/a");
  CHECK(n.size() == 1);
  CHECK(n.at(0) == "a");
}

TEST_CASE("malformed names rejected")
{
  CHECK_THROWS_AS(Name::parse(""), MalformedName);
  CHECK_THROWS_AS(Name::parse("//x"), MalformedName);
  CHECK_THROWS_AS(Name::parse("x/y"), MalformedName);
  CHECK_THROWS_AS(Name::parse("/a//b"), MalformedName);
  CHECK_THROWS_AS(Name::parse("/a/"), MalformedName);
  CHECK_THROWS_AS(Name(std::vector<std::string>{}), MalformedName);
  CHECK_THROWS_AS(Name({"a/b"}), MalformedName);
}

TEST_CASE("prefix relation")
{
  CHECK(Name::parse("/traffic").isPrefixOf(Name::parse("/traffic/monitor")));
  CHECK_FALSE(Name::parse("/traffic/monitor").isPrefixOf(Name::parse("/traffic")));
  CHECK(Name::parse("/a").isPrefixOf(Name::parse("/a"))); // reflexive
  CHECK_FALSE(Name::parse("/ab").isPrefixOf(Name::parse("/a/b")));
}

TEST_CASE("prefix is antisymmetric on equal length")
{
  Name a = Name::parse("/x/y");
  Name b = Name::parse("/x/z");
  CHECK_FALSE(a.isPrefixOf(b));
  CHECK_FALSE(b.isPrefixOf(a));
  CHECK(a.isPrefixOf(a));
}

TEST_CASE("parse/print round-trip over random names")
{
  std::mt19937 rng(42);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789-_";
  for (int i = 0; i < 500; ++i) {
    std::vector<std::string> components;
    int n = 1 + static_cast<int>(rng() % 5);
    for (int c = 0; c < n; ++c) {
      int len = 1 + static_cast<int>(rng() % 12);
      std::string comp;
      for (int k = 0; k < len; ++k) {
        comp += alphabet[rng() % alphabet.size()];
      }
      components.push_back(std::move(comp));
    }
    Name name(components);
    CHECK(Name::parse(name.toUri()) == name);
  }
}

TEST_CASE("ordering puts a prefix before its extensions")
{
  CHECK(Name::parse("/a") < Name::parse("/a/b"));
  CHECK(Name::parse("/a/b") < Name::parse("/ab"));
  CHECK_FALSE(Name::parse("/b") < Name::parse("/a/zz"));
}

TEST_CASE("getPrefix and append")
{
  Name n = Name::parse("/a/b/c");
  CHECK(n.getPrefix(2) == Name::parse("/a/b"));
  CHECK(n.getPrefix(9) == n);
  CHECK(n.append("d") == Name::parse("/a/b/c/d"));
}
