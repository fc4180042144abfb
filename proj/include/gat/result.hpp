#pragma once

#include <cassert>
#include <utility>
#include <variant>

namespace gat {

/// Value-or-error return type used throughout the kernel.
template <typename T, typename E>
class Result {
public:
	Result(T value) : storage_(std::in_place_index<0>, std::move(value)) {}
	Result(E error) : storage_(std::in_place_index<1>, std::move(error)) {}

	bool ok() const noexcept { return storage_.index() == 0; }
	explicit operator bool() const noexcept { return ok(); }

	const T& value() const& { assert(ok()); return std::get<0>(storage_); }
	T& value() & { assert(ok()); return std::get<0>(storage_); }
	T&& value() && { assert(ok()); return std::get<0>(std::move(storage_)); }

	const E& error() const& { assert(!ok()); return std::get<1>(storage_); }
	E&& error() && { assert(!ok()); return std::get<1>(std::move(storage_)); }

	const T* operator->() const { return &value(); }
	T* operator->() { return &value(); }
	const T& operator*() const& { return value(); }
	T& operator*() & { return value(); }
	T&& operator*() && { return std::move(*this).value(); }

private:
	std::variant<T, E> storage_;
};

struct Unit {
	bool operator==(const Unit&) const = default;
};

template <typename E>
using Status = Result<Unit, E>;

}  // namespace gat
