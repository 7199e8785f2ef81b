#ifndef ROOM25_RESULT_HPP
#define ROOM25_RESULT_HPP

#include <cassert>
#include <utility>
#include <variant>

namespace room25 {

/**
 * Minimal expected-style result carrier.
 *
 * Rule violations and malformed inputs are ordinary data in this library,
 * not exceptional conditions: searches probe illegal moves on purpose and
 * parsers must report positions. Exceptions are reserved for programmer
 * errors (assert-level misuse).
 */
template <typename T, typename E>
class Result {
public:
    Result(T value) : v_(std::in_place_index<0>, std::move(value)) {}
    Result(E error) : v_(std::in_place_index<1>, std::move(error)) {}

    bool ok() const { return v_.index() == 0; }
    explicit operator bool() const { return ok(); }

    T& value() {
        assert(ok());
        return std::get<0>(v_);
    }
    const T& value() const {
        assert(ok());
        return std::get<0>(v_);
    }

    E& error() {
        assert(!ok());
        return std::get<1>(v_);
    }
    const E& error() const {
        assert(!ok());
        return std::get<1>(v_);
    }

    T value_or(T fallback) const {
        return ok() ? std::get<0>(v_) : std::move(fallback);
    }

private:
    std::variant<T, E> v_;
};

}  // namespace room25

#endif  // ROOM25_RESULT_HPP
