#include "oltr/rankers.hpp"

#include <cmath>
#include <string>

namespace oltr {

double ucb_cascade(double w_hat, std::uint64_t N, std::uint64_t t, double alpha) {
  if (N == 0) throw ValidationError("ucb_cascade: examination count must be positive");
  if (t == 0) throw ValidationError("ucb_cascade: round must be at least 1");
  return w_hat + std::sqrt(alpha * std::log(static_cast<double>(t)) / static_cast<double>(N));
}

double ucb_pbm(std::uint64_t S, std::uint64_t n, double N_tilde, std::uint64_t t, double alpha) {
  if (t == 0) throw ValidationError("ucb_pbm: round must be at least 1");
  if (N_tilde <= 0.0) return kUnexploredUcb;
  const double log_t = std::log(static_cast<double>(t));
  return static_cast<double>(S) / N_tilde +
         std::sqrt(alpha * static_cast<double>(n) * log_t / (N_tilde * N_tilde));
}

Ranker::Ranker(std::size_t num_items, std::size_t list_size, double alpha)
    : num_items_(num_items), list_size_(list_size), alpha_(alpha) {
  if (list_size == 0) throw ValidationError("K must be at least 1");
  if (list_size > num_items) throw ValidationError("K exceeds L");
  if (!(alpha > 1.0)) throw ValidationError("exploration parameter alpha must exceed 1");
}

void Ranker::ucb_all(std::vector<double>& out) const {
  out.resize(num_items_);
  for (std::size_t i = 0; i < num_items_; ++i) out[i] = ucb(item_at_index(i));
}

RankedList Ranker::recommend() const {
  std::vector<double> scores;
  ucb_all(scores);
  return top_k_by_score(scores, list_size_);
}

void Ranker::update(const RankedList& list, const FeedbackRound& feedback) {
  if (list.size() != list_size_ || feedback.size() != list_size_) {
    throw ValidationError("feedback length " + std::to_string(feedback.size()) + " does not match K=" +
                          std::to_string(list_size_));
  }
  validate_list(list, list_size_, num_items_);
  feedback.check_consistent();
  apply(list, feedback);
  ++t_;
}

CascadeUcb1::CascadeUcb1(std::size_t num_items, std::size_t list_size, double alpha)
    : Ranker(num_items, list_size, alpha), count_(num_items, 1), clicks_(num_items, 0) {}

double CascadeUcb1::mean(ItemId id) const {
  const auto i = index_of(id);
  return static_cast<double>(clicks_.at(i)) / static_cast<double>(count_.at(i));
}

double CascadeUcb1::ucb(ItemId id) const { return ucb_cascade(mean(id), count(id), round(), alpha()); }

ItemState CascadeUcb1::state(ItemId id) const {
  return ItemState{id, count(id), clicks_.at(index_of(id)), 0.0, mean(id), ucb(id)};
}

void CascadeUcb1::apply(const RankedList& list, const FeedbackRound& feedback) {
  // w_hat is kept as clicks / N, which is the running mean of the update rule.
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!feedback.exam[i]) continue;
    const auto a = index_of(list[i]);
    count_[a] += 1;
    clicks_[a] += feedback.clicks[i];
  }
}

PbmUcb::PbmUcb(std::size_t num_items, PositionBias bias, double alpha)
    : Ranker(num_items, bias.size(), alpha),
      bias_(std::move(bias)),
      n_(num_items, 1),
      clicks_(num_items, 0),
      exam_estimate_(num_items, 0.0) {}

double PbmUcb::ucb(ItemId id) const {
  const auto i = index_of(id);
  return ucb_pbm(clicks_.at(i), n_.at(i), exam_estimate_.at(i), round(), alpha());
}

ItemState PbmUcb::state(ItemId id) const {
  const auto i = index_of(id);
  const double mean = exam_estimate_[i] > 0 ? static_cast<double>(clicks_[i]) / exam_estimate_[i] : 0.0;
  return ItemState{id, n_.at(i), clicks_[i], exam_estimate_[i], mean, ucb(id)};
}

void PbmUcb::apply(const RankedList& list, const FeedbackRound& feedback) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto a = index_of(list[i]);
    n_[a] += 1;
    clicks_[a] += feedback.clicks[i];
    exam_estimate_[a] += bias_[i];
  }
}

}  // namespace oltr
