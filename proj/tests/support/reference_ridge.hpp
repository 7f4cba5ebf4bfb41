#pragma once

#include <utility>
#include <vector>

// Sixteen (alpha, beta) pairs read off the nLL ridge of a real dataset. They
// lie close to the level set alpha^-beta ~ 7.75.
inline std::vector<std::pair<double, double>> reference_ridge_pairs() {
  const double alpha[] = {0.119639279, 0.129458918, 0.158917836, 0.168737475, 0.178557114, 0.188376754,
                          0.198196393, 0.227655311, 0.23747495,  0.257114228, 0.266933868, 0.286573146,
                          0.296392786, 0.306212425, 0.316032064, 0.345490982};
  const double beta[] = {0.964328657, 1.00240481,  1.112825651, 1.150901804, 1.188977956, 1.227054108,
                         1.265130261, 1.383166333, 1.4250501,   1.508817635, 1.550701403, 1.638276553,
                         1.683967936, 1.729659319, 1.779158317, 1.927655311};
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < 16; ++i) out.emplace_back(alpha[i], beta[i]);
  return out;
}
