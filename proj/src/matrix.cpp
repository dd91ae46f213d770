#include "permbound/matrix.hpp"

#include <algorithm>

namespace permbound {

IndexSet::IndexSet(std::vector<std::size_t> members) : members_(std::move(members)) {
  for (std::size_t k = 0; k < members_.size(); ++k) {
    if (members_[k] < 1) fail(ErrorCode::IndexOutOfRange, "index sets are 1-based");
    if (k > 0 && members_[k] <= members_[k - 1])
      fail(ErrorCode::PreconditionViolated, "index set members must be strictly increasing");
  }
}

IndexSet IndexSet::range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> m;
  for (std::size_t i = first; i <= last && first >= 1; ++i) m.push_back(i);
  return IndexSet(std::move(m));
}

IndexSet IndexSet::from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (std::uint64_t{1} << i)) m.push_back(i + 1);
  return IndexSet(std::move(m));
}

bool IndexSet::contains(std::size_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }

IndexSet IndexSet::with(std::size_t i) const {
  if (contains(i)) return *this;
  std::vector<std::size_t> m = members_;
  m.insert(std::upper_bound(m.begin(), m.end(), i), i);
  return IndexSet(std::move(m));
}

IndexSet IndexSet::without(std::size_t i) const {
  std::vector<std::size_t> m;
  std::copy_if(members_.begin(), members_.end(), std::back_inserter(m), [i](std::size_t x) { return x != i; });
  return IndexSet(std::move(m));
}

IndexSet IndexSet::complement(std::size_t n) const {
  std::vector<std::size_t> m;
  for (std::size_t i = 1; i <= n; ++i)
    if (!contains(i)) m.push_back(i);
  return IndexSet(std::move(m));
}

std::string to_string(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(s.members()[k]);
  }
  return out + "}";
}

}  // namespace permbound
