#include "doctest.h"
#include "wmprc/design.hpp"

using namespace wmprc;

namespace {

MatchRecord make_match(const std::string& id, std::array<std::string, 3> red,
                       std::array<std::string, 3> blue, int rs, int bs) {
  return MatchRecord{id, red, blue, rs, bs};
}

}  // namespace

TEST_CASE("build_design encodes alliances, response and outcome") {
  std::vector<MatchRecord> matches{
      make_match("qm1", {"A", "B", "C"}, {"D", "E", "F"}, 30, 21)};
  RobotRoster roster({"A", "B", "C", "D", "E", "F"});
  DesignMatrix design = build_design(matches, roster);

  CHECK(design.match_count() == 1);
  CHECK(design.robot_count() == 6);
  Eigen::VectorXd row = design.dense_row(0);
  for (int i = 0; i < 3; ++i) {
    CHECK(row[i] == 1.0);
    CHECK(row[3 + i] == -1.0);
  }
  CHECK(design.y()[0] == 9.0);
  CHECK(design.outcome()[0] == 1.0);
}

TEST_CASE("tied scores code the outcome as one half") {
  std::vector<MatchRecord> matches{
      make_match("qm1", {"A", "B", "C"}, {"D", "E", "F"}, 17, 17)};
  RobotRoster roster = RobotRoster::from_matches(matches);
  DesignMatrix design = build_design(matches, roster);
  CHECK(design.y()[0] == 0.0);
  CHECK(design.outcome()[0] == 0.5);
}

TEST_CASE("unknown robot names the match and identifier") {
  std::vector<MatchRecord> matches{
      make_match("qm7", {"A", "B", "C"}, {"D", "E", "Z"}, 10, 5)};
  RobotRoster roster({"A", "B", "C", "D", "E", "F"});
  try {
    build_design(matches, roster);
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(std::string(e.what()).find("qm7") != std::string::npos);
    CHECK(std::string(e.what()).find("Z") != std::string::npos);
  }
}

TEST_CASE("duplicate robot within a match is rejected") {
  std::vector<MatchRecord> matches{
      make_match("qm1", {"A", "B", "C"}, {"A", "E", "F"}, 10, 5)};
  RobotRoster roster({"A", "B", "C", "E", "F", "G"});
  CHECK_THROWS_AS(build_design(matches, roster), ValidationError);
}

TEST_CASE("design rows always sum to zero with three of each sign") {
  std::vector<MatchRecord> matches{
      make_match("qm1", {"A", "B", "C"}, {"D", "E", "F"}, 30, 21),
      make_match("qm2", {"A", "D", "G"}, {"B", "E", "H"}, 12, 40),
      make_match("qm3", {"C", "F", "H"}, {"A", "G", "E"}, 5, 5)};
  RobotRoster roster = RobotRoster::from_matches(matches);
  DesignMatrix design = build_design(matches, roster);
  Eigen::MatrixXd x = design.dense();
  for (int s = 0; s < design.match_count(); ++s) {
    CHECK(x.row(s).sum() == 0.0);
    CHECK(x.row(s).cwiseAbs().sum() == 6.0);
    validate_design_row(x.row(s).transpose());
  }
  // Gram/xty agree with dense recomputation.
  CHECK((design.gram() - x.transpose() * x).norm() == 0.0);
  CHECK((design.xty() - x.transpose() * design.y()).norm() == 0.0);
}

TEST_CASE("make_design_row validates and encodes a hypothetical match") {
  RobotRoster roster({"A", "B", "C", "D", "E", "F", "G"});
  Eigen::VectorXd row =
      make_design_row(roster, {"A", "C", "E"}, {"B", "D", "G"});
  validate_design_row(row);
  CHECK(row[roster.index_of("A")] == 1.0);
  CHECK(row[roster.index_of("G")] == -1.0);
  CHECK(row[roster.index_of("F")] == 0.0);
  CHECK_THROWS_AS(make_design_row(roster, {"A", "A", "E"}, {"B", "D", "G"}),
                  ValidationError);
  Eigen::VectorXd bad = row;
  bad[0] = 2.0;
  CHECK_THROWS_AS(validate_design_row(bad), ValidationError);
}

TEST_CASE("roster ordering is natural") {
  std::vector<MatchRecord> matches{
      make_match("qm1", {"frc254", "frc1323", "frc33"},
                 {"frc2056", "frc4", "frc118"}, 3, 2)};
  RobotRoster roster = RobotRoster::from_matches(matches);
  CHECK(roster.ids() == std::vector<std::string>{"frc4", "frc33", "frc118",
                                                 "frc254", "frc1323",
                                                 "frc2056"});
}
