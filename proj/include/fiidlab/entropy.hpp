#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fiidlab {

// Base-2 binary entropy; h(0) = h(1) = 0 by continuity. Throws outside [0,1].
double binary_entropy(double x);

// Finite discrete distribution. The constructor validates nonnegativity and
// that the probabilities sum to 1 (within 1e-9, then renormalized exactly).
class Distribution {
public:
    Distribution(std::vector<std::string> support, std::vector<double> probs);

    const std::vector<std::string>& support() const { return support_; }
    const std::vector<double>& probs() const { return probs_; }

    static Distribution read_csv(std::istream& is);  // "symbol,probability" lines
    void write_csv(std::ostream& os) const;

private:
    std::vector<std::string> support_;
    std::vector<double> probs_;
};

double entropy(const Distribution& p);

// Joint distribution over symbol pairs.
class JointDistribution {
public:
    JointDistribution(std::vector<std::pair<std::string, std::string>> support,
                      std::vector<double> probs);

    Distribution margin(int which) const;  // 0 = first coordinate, 1 = second
    double joint_entropy() const;

    const std::vector<std::pair<std::string, std::string>>& support() const {
        return support_;
    }
    const std::vector<double>& probs() const { return probs_; }

private:
    std::vector<std::pair<std::string, std::string>> support_;
    std::vector<double> probs_;
};

// H(other | margin `given`) = H(joint) - H(margin given).
double conditional_entropy(const JointDistribution& joint, int given);

} // namespace fiidlab
