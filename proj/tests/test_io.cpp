#include <catch2/catch_amalgamated.hpp>

#include <globrep/io.hpp>

#include "testutil.hpp"

using namespace globrep;

namespace {

FamilyPtr chain2() {
  static FamilyPtr f = build_cyclic_p(2, 2);
  return f;
}

FamilyPtr elab2() {
  static FamilyPtr f = build_elementary_abelian(2, 2);
  return f;
}

// Hand-written two-class table with the same shape as the order <= 2 chain.
CustomTable two_class_table() {
  CustomTable t;
  t.objects = {{"pt", 1}, {"flip", 2}};
  t.homs[{"pt", "pt"}] = {"e"};
  t.homs[{"flip", "flip"}] = {"i"};
  t.homs[{"flip", "pt"}] = {"q"};
  t.identity = {{"pt", "e"}, {"flip", "i"}};
  t.compose[{"pt", "pt", "pt"}][{"e", "e"}] = "e";
  t.compose[{"flip", "pt", "pt"}][{"e", "q"}] = "q";
  t.compose[{"flip", "flip", "pt"}][{"q", "i"}] = "q";
  t.compose[{"flip", "flip", "flip"}][{"i", "i"}] = "i";
  return t;
}

}  // namespace

TEST_CASE("matrices round-trip bit-exactly") {
  Mat m(2, 3);
  m(0, 0) = Rational(-7) / 3;
  m(0, 1) = Rational(22) / 7;
  m(1, 2) = Rational(BigInt("123456789012345678901")) / BigInt("9973");
  Json j = mat_to_json(m);
  REQUIRE(j[0][0].get<std::string>() == "-7/3");
  REQUIRE(j[1][0].get<std::string>() == "0");
  REQUIRE(mat_from_json(j, 2, 3, "t") == m);
  REQUIRE_THROWS_AS(mat_from_json(j, 3, 3, "t"), input_error);
  Json bad = j;
  bad[0][1] = "7/";
  REQUIRE_THROWS_AS(mat_from_json(bad, 2, 3, "t"), input_error);
}

TEST_CASE("builtin families round-trip through their descriptors") {
  std::vector<FamilyPtr> fams = {chain2(), elab2(), build_abelian_p(2, 8),
                                 build_abelian_list({AbelianGroup{{}}, AbelianGroup{{2, 4}}})};
  for (FamilyPtr fam : fams) {
    Json j = family_to_json(*fam);
    FamilyPtr back = family_from_json(j);
    REQUIRE(family_to_json(*back) == j);
    REQUIRE(back->n() == fam->n());
    for (int g = 0; g < fam->n(); ++g) REQUIRE(back->label(g) == fam->label(g));
  }
  REQUIRE(family_to_json(*chain2())["kind"] == "cyclic_p");
  REQUIRE(family_to_json(*chain2())["max_exponent"] == 2);
  REQUIRE_THROWS_AS(family_from_json(Json{{"kind", "dihedral"}}), input_error);
  REQUIRE_THROWS_AS(family_from_json(Json{{"kind", "cyclic_p"}, {"p", 2}}), input_error);
}

TEST_CASE("custom families serialize as full tables") {
  FamilyPtr fam = FamilyBuilder::custom(two_class_table());
  REQUIRE(validate_family(*fam).ok);
  Json j = family_to_json(*fam);
  REQUIRE(j["kind"] == "custom");
  REQUIRE(j["objects"].size() == 2);
  REQUIRE(j["compose"].size() == 4);
  FamilyPtr back = family_from_json(j);
  REQUIRE(validate_family(*back).ok);
  REQUIRE(family_to_json(*back) == j);
  REQUIRE(back->hom_count(1, 0) == 1);
  REQUIRE(back->compose(1, 1, 0, 0, 0) == 0);

  Json broken = j;
  broken["compose"].erase(1);
  REQUIRE_THROWS_AS(family_from_json(broken), input_error);
}

TEST_CASE("objects round-trip with embedded families") {
  Rng rng(0x10aa);
  for (FamilyPtr fam : {chain2(), elab2()})
    for (int iter = 0; iter < 4; ++iter) {
      Rep x = testutil::conjugated(testutil::random_rep(fam, rng), rng);
      Json j = rep_to_json(x);
      // Standalone reload lives on its own family value: compare canonically.
      Rep back = rep_from_json(j);
      REQUIRE(back.dims == x.dims);
      REQUIRE(back.tr == x.tr);
      REQUIRE(rep_to_json(back).dump() == j.dump());
      // Reloading against the workspace family gives equality on the nose.
      REQUIRE(rep_from_json(j, fam) == x);
    }
  Rep x = unit_rep(chain2());
  REQUIRE_THROWS_AS(rep_from_json(rep_to_json(x), elab2()), input_error);
  Json core = rep_core_to_json(x);
  REQUIRE_THROWS_AS(rep_from_json(core), input_error);
  REQUIRE(rep_core_from_json(core, chain2()) == x);

  Json bad = rep_to_json(x);
  bad["dims"]["C32"] = 1;
  REQUIRE_THROWS_AS(rep_from_json(bad), input_error);
}

TEST_CASE("morphism components round-trip") {
  Rng rng(0x30a);
  Rep x = testutil::random_rep(chain2(), rng), y = testutil::random_rep(chain2(), rng);
  RepMorphism f = testutil::random_morphism(x, y, rng);
  Json j = morphism_components_to_json(f);
  RepMorphism back = morphism_from_json(j, x, y);
  REQUIRE(back.comp == f.comp);
  REQUIRE(validate_morphism(back).ok);
  REQUIRE_THROWS_AS(morphism_from_json(Json::array(), x, y), input_error);
}

TEST_CASE("ideals round-trip by label") {
  IdealSpec p = group_prime(chain2(), 1);
  Json j = ideal_to_json(p);
  IdealSpec back = ideal_from_json(j, chain2());
  REQUIRE(back.support == p.support);
  REQUIRE(back.generator_supports == p.generator_supports);
  REQUIRE(back.generator_names == p.generator_names);
  REQUIRE(ideal_to_json(back).dump() == j.dump());
}

TEST_CASE("filtration certificates round-trip and carry status") {
  Rep x = dsum(chi_rep(chain2(), 1, trivial_out_rep(chain2(), 1)).rep, unit_rep(chain2()));
  FiltrationCertificate cert = decompose_chi(x);
  Json j = filtration_to_json(cert);
  REQUIRE(j["verified"] == true);
  for (const Json& s : j["steps"]) REQUIRE(s["exact"] == true);
  FiltrationCertificate back = filtration_from_json(j);
  REQUIRE(verify_filtration(back));
  REQUIRE(filtration_to_json(back).dump() == j.dump());

  FiltrationCertificate gcert = gamma_filtration(gamma_rep(chain2(), 1));
  Json gj = filtration_to_json(gcert);
  FiltrationCertificate gback = filtration_from_json(gj, chain2());
  REQUIRE(verify_filtration(gback));
  REQUIRE(filtration_to_json(gback).dump() == gj.dump());

  Json tampered = j;
  tampered["object"]["transitions"][0]["by"].begin().value()[0][0] = "7";
  REQUIRE_FALSE(verify_filtration(filtration_from_json(tampered)));

  Json misshapen = j;
  misshapen["object"]["dims"]["1"] = 5;
  REQUIRE_THROWS_AS(filtration_from_json(misshapen), input_error);
}

TEST_CASE("membership certificates round-trip for both verdicts") {
  FamilyPtr fam = chain2();
  IdealSpec ideal = ideal_from_support(fam, {1});
  Rep chi = chi_rep(fam, 1, trivial_out_rep(fam, 1)).rep;

  MembershipCertificate yes = serre_member_certified(chi, ideal);
  Json jy = membership_to_json(yes, chi, ideal);
  REQUIRE(jy["member"] == true);
  REQUIRE(jy["verified"] == true);
  MembershipCertificate back = membership_from_json(jy, fam);
  REQUIRE(verify_membership(back, chi, ideal));
  REQUIRE(membership_to_json(back, chi, ideal).dump() == jy.dump());

  Rep u = unit_rep(fam);
  MembershipCertificate no = serre_member_certified(u, ideal);
  Json jn = membership_to_json(no, u, ideal);
  REQUIRE(jn["member"] == false);
  REQUIRE(jn["verified"] == true);
  REQUIRE(jn["offending"].size() == 2);
  MembershipCertificate nback = membership_from_json(jn, fam);
  REQUIRE(verify_membership(nback, u, ideal));
}

TEST_CASE("spectrum reports round-trip") {
  SpectrumReport rep = spectrum_discrete(chain2());
  Json j = spectrum_report_to_json(rep);
  REQUIRE(j["discrete"] == true);
  REQUIRE(j["points"].size() == 3);
  SpectrumReport back = spectrum_report_from_json(j);
  REQUIRE(spectrum_report_to_json(back).dump() == j.dump());

  NStableSpectrumReport ns = spc_n_stable("cyclic_p", 2, 16);
  Json nj = nstable_report_to_json(ns);
  REQUIRE(nj["discrete"] == false);
  NStableSpectrumReport nback = nstable_report_from_json(nj);
  REQUIRE(nstable_report_to_json(nback).dump() == nj.dump());
}

TEST_CASE("object expressions parse and resolve") {
  FamilyPtr fam = chain2();
  Rep stored = gamma_rep(fam, 2);
  ObjectResolver resolve = [&](const std::string& kind, const std::string& name) -> Rep {
    if (kind == "rep" && name == "hole2") return stored;
    throw input_error("unresolved " + kind + ":" + name);
  };

  REQUIRE(parse_object_expression("unit", fam, resolve) == unit_rep(fam));
  REQUIRE(parse_object_expression("zero", fam, resolve) == zero_rep(fam));
  REQUIRE(parse_object_expression("e:C4", fam, resolve) == representable_rep(fam, 2));
  REQUIRE(parse_object_expression("chi:C2", fam, resolve) == chi_rep(fam, 1, trivial_out_rep(fam, 1)).rep);
  REQUIRE(parse_object_expression("gamma:1", fam, resolve) == gamma_rep(fam, 1));
  REQUIRE(parse_object_expression("rep:hole2", fam, resolve) == stored);
  REQUIRE(parse_object_expression(" tensor( chi:C2 , dsum(unit , e:C2) ) ", fam, resolve) ==
          tensor(chi_rep(fam, 1, trivial_out_rep(fam, 1)).rep, dsum(unit_rep(fam), representable_rep(fam, 1))));

  REQUIRE_THROWS_AS(parse_object_expression("chi:C32", fam, resolve), input_error);
  REQUIRE_THROWS_AS(parse_object_expression("gamma:x", fam, resolve), input_error);
  REQUIRE_THROWS_AS(parse_object_expression("gamma:9", fam, resolve), input_error);
  REQUIRE_THROWS_AS(parse_object_expression("tensor(unit", fam, resolve), input_error);
  REQUIRE_THROWS_AS(parse_object_expression("unit extra", fam, resolve), input_error);
  REQUIRE_THROWS_AS(parse_object_expression("frob(unit,zero)", fam, resolve), input_error);
  REQUIRE_THROWS_AS(parse_object_expression("", fam, resolve), input_error);
  REQUIRE_THROWS_AS(parse_object_expression("rep:missing", fam, resolve), input_error);
}

TEST_CASE("workspace configs parse and re-emit deterministically") {
  Json j = {{"family", {{"kind", "cyclic_p"}, {"p", 2}, {"max_exponent", 2}}},
            {"objects", {{"a", "unit"}, {"b", "tensor(chi:C2,unit)"}}},
            {"format", "json"},
            {"budgets", {{"closure_depth", 3}, {"enumeration_guard", 10}, {"truncation", 5}}}};
  WorkspaceConfig cfg = config_from_json(j);
  REQUIRE(cfg.format == "json");
  REQUIRE(cfg.budgets.closure_depth == 3);
  REQUIRE(cfg.budgets.enumeration_guard == 10);
  REQUIRE(cfg.budgets.truncation == 5);
  REQUIRE(cfg.objects.size() == 2);
  REQUIRE(cfg.objects[0].first == "a");
  REQUIRE(config_to_json(config_from_json(config_to_json(cfg))).dump() == config_to_json(cfg).dump());

  WorkspaceConfig defaults = config_from_json(Json{{"family", {{"kind", "cyclic_p"}, {"p", 2}, {"max_exponent", 1}}}});
  REQUIRE(defaults.format == "text");
  REQUIRE(defaults.budgets.closure_depth == 4);

  Json bad_format = j;
  bad_format["format"] = "xml";
  REQUIRE_THROWS_AS(config_from_json(bad_format), input_error);
  Json bad_budget = j;
  bad_budget["budgets"]["truncation"] = -1;
  REQUIRE_THROWS_AS(config_from_json(bad_budget), input_error);
  REQUIRE_THROWS_AS(config_from_json(Json::object()), input_error);
}

TEST_CASE("identical values serialize to identical bytes") {
  for (int round = 0; round < 2; ++round) {
    Json a = spectrum_report_to_json(spectrum_discrete(chain2()));
    Json b = spectrum_report_to_json(spectrum_discrete(chain2()));
    REQUIRE(a.dump() == b.dump());
  }
  Rep x = representable_rep(elab2(), 2);
  REQUIRE(rep_to_json(x).dump() == rep_to_json(representable_rep(elab2(), 2)).dump());
  FiltrationCertificate c1 = decompose_chi(x), c2 = decompose_chi(x);
  REQUIRE(filtration_to_json(c1).dump() == filtration_to_json(c2).dump());
}

TEST_CASE("json files write and read back") {
  std::string path = "io_roundtrip_tmp.json";
  Json j = family_to_json(*chain2());
  write_text_file(path, j.dump(2));
  REQUIRE(read_json_file(path) == j);
  write_text_file(path, "{not json");
  REQUIRE_THROWS_AS(read_json_file(path), input_error);
  std::remove(path.c_str());
  REQUIRE_THROWS_AS(read_json_file("definitely_missing_dir/x.json"), input_error);
}
