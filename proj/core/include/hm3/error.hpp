#ifndef HM3_ERROR_HPP
#define HM3_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace hm3 {

enum class Err {
    InvalidTriple,
    SubsetTooSmall,
    SetsNotDisjoint,
    InvalidOrder,
    OrderTooLarge,
    InvalidArgument,
    DensityTooLow,
    EmptyGraph,
    AbsorptionFailed,
    NotExtremal,
    BelowThreshold,
    GreedyFailed,
    GoodPairGraphTooSparse,
    HallViolated,
    ParseError,
    Internal,
};

const char * err_name(Err e);

/// All hard failures carry a kind plus an optional integer payload
/// (offending vertex, line number, Hall witness, ...).
class Error : public std::runtime_error {
  public:
    Error(Err kind, std::string message, std::vector<long long> payload = {})
        : std::runtime_error(std::string(err_name(kind)) + ": " + message),
          kind_(kind), payload_(std::move(payload)) {}

    Err kind() const { return kind_; }
    const std::vector<long long> & payload() const { return payload_; }

  private:
    Err kind_;
    std::vector<long long> payload_;
};

} // namespace hm3

#endif
