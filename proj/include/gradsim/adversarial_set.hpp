#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gradsim/attacks.hpp"

namespace gradsim {

struct AdversarialRecord {
  std::size_t index = 0;  // position in the source dataset
  Tensor x;               // original input
  AttackResult result;
  // Additional manifest columns (white-box metadata); keys must agree across records.
  std::vector<std::pair<std::string, std::string>> extra;
};

struct AdversarialSet {
  std::string attack;
  std::vector<AdversarialRecord> records;

  double success_rate() const;
  // Mean L2 over successful records; 0 when none succeeded.
  double mean_success_l2() const;
};

// Number of coordinates that differ (flip count on binary inputs).
std::size_t changed_features(const Tensor& a, const Tensor& b);

// Writes <stem>.manifest.csv and <stem>.bin (archive holding x.<i> and adv.<i>).
void save_adversarial_set(const AdversarialSet& set, const std::filesystem::path& stem);
// Reloads both files and checks that stored distortions match the tensors exactly.
AdversarialSet load_adversarial_set(const std::filesystem::path& stem);

}  // namespace gradsim
