#include "branchkit/weyl.hpp"

#include <stdexcept>

namespace branchkit {

Weight WeylElement::apply(const Weight& w) const {
    if ((int)w.labels.size() != n_ - 1)
        throw std::invalid_argument("weight has wrong number of labels");
    std::vector<long long> in(n_);
    for (int i = 0; i < n_ - 1; ++i) in[i] = w.labels[i];
    in[n_ - 1] = w.dval;
    std::vector<long long> out(n_, 0);
    for (int i = 0; i < n_; ++i) {
        long long s = 0;
        for (int j = 0; j < n_; ++j) s += mat_[i * n_ + j] * in[j];
        out[i] = s;
    }
    Weight res;
    res.labels.assign(out.begin(), out.end() - 1);
    res.dval = out[n_ - 1];
    return res;
}

bool WeylElement::is_identity() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (mat_[i * n_ + j] != (i == j ? 1 : 0)) return false;
    return true;
}

WeylGroup::WeylGroup(const AffineAlgebra& alg) : alg_(&alg), n_(alg.nodes() + 1) {
    std::vector<long long> id(n_ * n_, 0);
    for (int i = 0; i < n_; ++i) id[i * n_ + i] = 1;
    layers_.push_back({WeylElement(n_, id, 0, {})});
    seen_[id] = 0;
}

std::vector<long long> WeylGroup::reflection_matrix(int i) const {
    // s_i(lambda) = lambda - lambda(alpha_i^vee) alpha_i acts on labels by
    // l_j -> l_j - a_{ji} l_i and on dval by dval -> dval + [i == 0] l_0.
    const int r = alg_->rank();
    std::vector<long long> m(n_ * n_, 0);
    for (int j = 0; j < n_; ++j) m[j * n_ + j] = 1;
    for (int j = 0; j <= r; ++j) m[j * n_ + i] -= alg_->gcm(j, i);
    if (i == 0) m[(n_ - 1) * n_ + 0] += 1;
    return m;
}

WeylElement WeylGroup::simple_reflection(int i) const {
    if (i < 0 || i > alg_->rank())
        throw std::invalid_argument("simple reflection index out of range");
    return WeylElement(n_, reflection_matrix(i), 1, {i});
}

void WeylGroup::ensure_layers(int max_length) {
    while ((int)layers_.size() <= max_length) {
        int len = (int)layers_.size();
        std::vector<WeylElement> next;
        for (const auto& w : layers_.back()) {
            for (int i = 0; i <= alg_->rank(); ++i) {
                std::vector<long long> s = reflection_matrix(i);
                std::vector<long long> prod(n_ * n_, 0);
                for (int a = 0; a < n_; ++a)
                    for (int b = 0; b < n_; ++b) {
                        long long v = w.mat_[a * n_ + b];
                        if (v == 0) continue;
                        for (int c = 0; c < n_; ++c)
                            prod[a * n_ + c] += v * s[b * n_ + c];
                    }
                if (seen_.count(prod)) continue;
                seen_[prod] = len;
                std::vector<int> word = w.word_;
                word.push_back(i);
                next.emplace_back(n_, std::move(prod), len, std::move(word));
            }
        }
        layers_.push_back(std::move(next));
    }
}

std::vector<size_t> WeylGroup::layer_sizes(int max_length) {
    if (max_length < 0) throw std::invalid_argument("max_length must be nonnegative");
    ensure_layers(max_length);
    std::vector<size_t> sizes;
    for (int l = 0; l <= max_length; ++l) sizes.push_back(layers_[l].size());
    return sizes;
}

const std::vector<WeylElement>& WeylGroup::layer(int length) {
    if (length < 0) throw std::invalid_argument("length must be nonnegative");
    ensure_layers(length);
    return layers_[length];
}

Weight WeylGroup::shifted_action(const WeylElement& w, const Weight& lambda) const {
    Weight rho = alg_->rho();
    return weight_sub(w.apply(weight_add(lambda, rho)), rho);
}

int WeylGroup::known_length(const std::vector<long long>& matrix) const {
    auto it = seen_.find(matrix);
    return it == seen_.end() ? -1 : it->second;
}

long long WeylGroup::min_dshift(int length) const {
    // Inversion sets consist of `length` distinct positive real roots and
    // (w*lambda)(d) >= sum of their n_0 values; pack greedily from below.
    long long fin_pos = (long long)alg_->finite_positive_roots().size();
    long long per_level = 2 * fin_pos;
    long long remaining = length - fin_pos;
    long long total = 0;
    long long level = 1;
    while (remaining > 0) {
        long long take = std::min(per_level, remaining);
        total += level * take;
        remaining -= take;
        ++level;
    }
    return std::max<long long>(total, 0);
}

}  // namespace branchkit
