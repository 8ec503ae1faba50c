#pragma once

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sft {

// Interned symbol table. Symbols are dense integer indices; tokens are the
// printable names. Index<->token is a bijection.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> tokens) {
        for (auto& t : tokens) add(t);
    }

    int add(const std::string& token) {
        if (token.empty()) throw std::invalid_argument("alphabet: empty token");
        auto [it, fresh] = index_.emplace(token, static_cast<int>(tokens_.size()));
        if (!fresh) throw std::invalid_argument("alphabet: duplicate token '" + token + "'");
        tokens_.push_back(token);
        return it->second;
    }

    int size() const { return static_cast<int>(tokens_.size()); }
    bool empty() const { return tokens_.empty(); }

    const std::string& token(int idx) const { return tokens_.at(static_cast<size_t>(idx)); }

    int index(const std::string& token) const {
        auto it = index_.find(token);
        if (it == index_.end()) throw std::out_of_range("alphabet: unknown token '" + token + "'");
        return it->second;
    }

    int find(const std::string& token) const {  // -1 when absent
        auto it = index_.find(token);
        return it == index_.end() ? -1 : it->second;
    }

    bool operator==(const Alphabet& o) const { return tokens_ == o.tokens_; }

    const std::vector<std::string>& tokens() const { return tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> index_;
};

}  // namespace sft
