#pragma once

#include <cstdint>

namespace whisper {

// All simulation time is integer nanoseconds. Every duration used by the
// protocols (packlet times, turnarounds, guard times) is exactly
// representable, so traces are bit-identical across runs and platforms.
using ns_t = std::int64_t;

constexpr ns_t operator""_us(unsigned long long v) { return static_cast<ns_t>(v) * 1000; }
constexpr ns_t operator""_ms(unsigned long long v) { return static_cast<ns_t>(v) * 1000000; }

constexpr ns_t us(std::int64_t v) { return v * 1000; }
constexpr ns_t ms(std::int64_t v) { return v * 1000000; }

constexpr double to_us(ns_t v) { return static_cast<double>(v) / 1e3; }
constexpr double to_ms(ns_t v) { return static_cast<double>(v) / 1e6; }

}  // namespace whisper
