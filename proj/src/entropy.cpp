#include "fiidlab/entropy.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "fiidlab/errors.hpp"

namespace fiidlab {

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw invalid_parameter("binary_entropy: argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    // log1p keeps the (1-x) term accurate down to subnormal x
    constexpr double ln2 = 0.693147180559945309417232121458;
    return -(x * std::log(x) + (1.0 - x) * std::log1p(-x)) / ln2;
}

namespace {

void validate_probs(std::vector<double>& probs) {
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw invalid_parameter("distribution has a negative entry");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw invalid_parameter("distribution probabilities do not sum to 1");
    for (double& p : probs) p /= sum;
}

double plugin_entropy(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

} // namespace

Distribution::Distribution(std::vector<std::string> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.size() != probs_.size())
        throw invalid_parameter("distribution support/probability size mismatch");
    if (support_.empty()) throw invalid_parameter("distribution is empty");
    validate_probs(probs_);
}

Distribution Distribution::read_csv(std::istream& is) {
    std::vector<std::string> support;
    std::vector<double> probs;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw io_error("distribution csv: want 'symbol,probability'");
        support.push_back(line.substr(0, comma));
        try {
            probs.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw io_error("distribution csv: bad probability in '" + line + "'");
        }
    }
    return Distribution(std::move(support), std::move(probs));
}

void Distribution::write_csv(std::ostream& os) const {
    char buf[64];
    for (std::size_t i = 0; i < support_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", probs_[i]);
        os << support_[i] << ',' << buf << '\n';
    }
}

double entropy(const Distribution& p) { return plugin_entropy(p.probs()); }

JointDistribution::JointDistribution(
    std::vector<std::pair<std::string, std::string>> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.size() != probs_.size())
        throw invalid_parameter("joint distribution support/probability size mismatch");
    if (support_.empty()) throw invalid_parameter("joint distribution is empty");
    validate_probs(probs_);
}

Distribution JointDistribution::margin(int which) const {
    if (which != 0 && which != 1) throw invalid_parameter("margin index must be 0 or 1");
    std::map<std::string, double> acc;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        const std::string& key = which == 0 ? support_[i].first : support_[i].second;
        acc[key] += probs_[i];
    }
    std::vector<std::string> sup;
    std::vector<double> pr;
    for (auto& [k, v] : acc) {
        sup.push_back(k);
        pr.push_back(v);
    }
    return Distribution(std::move(sup), std::move(pr));
}

double JointDistribution::joint_entropy() const { return plugin_entropy(probs_); }

double conditional_entropy(const JointDistribution& joint, int given) {
    return joint.joint_entropy() - entropy(joint.margin(given));
}

} // namespace fiidlab
