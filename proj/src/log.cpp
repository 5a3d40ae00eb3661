#include "sparse_expand/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace sparse_expand::log {

namespace {

std::atomic<Level> g_level{Level::warn};
std::mutex g_mutex;

void emit(std::string_view tag, std::string_view message) {
  std::lock_guard lock(g_mutex);
  std::cerr << tag << message << '\n';
}

}  // namespace

void set_level(Level level) { g_level = level; }
Level level() { return g_level; }

void info(std::string_view message) {
  if (g_level >= Level::info) emit("", message);
}

void warn(std::string_view message) {
  if (g_level >= Level::warn) emit("warning: ", message);
}

}  // namespace sparse_expand::log
