#pragma once

#include <golev/vardi.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace golev {

// On-disk layout: one file per polynomial plus a manifest, so the window can
// be extended without regenerating earlier levels.
//
//   manifest.txt:
//     golev-vardi-cache v1
//     window <W>
//     generated <iso-8601 utc>
//     content_hash <fnv1a64 over the serialized polynomials>
//     file T<n>.mpoly <fnv1a64 of the file bytes>     (one line per n)

namespace detail {

inline std::filesystem::path tn_path(const std::filesystem::path& dir,
                                     unsigned n) {
  return dir / ("T" + std::to_string(n) + ".mpoly");
}

inline void write_atomic(const std::filesystem::path& path,
                         const std::string& data) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << data;
    if (!out.flush()) throw CacheError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("corrupt cache: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline void save_vardi_cache(const VardiSet& vs,
                             const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string manifest = "golev-vardi-cache v1\n";
  manifest += "window " + std::to_string(vs.window()) + "\n";
  manifest += "generated " + vs.generated_at() + "\n";
  manifest += "content_hash " + vs.content_hash() + "\n";
  for (unsigned n = 1; n <= vs.window(); ++n) {
    const std::string body = serialize(vs.T(n));
    detail::write_atomic(detail::tn_path(dir, n), body);
    manifest += "file T" + std::to_string(n) + ".mpoly " + fnv1a64_hex(body) +
                "\n";
  }
  detail::write_atomic(dir / "manifest.txt", manifest);
}

// Loads a cache directory, re-verifying per-file hashes, the combined content
// hash, and the cheap VardiSet invariants.
inline VardiSet load_vardi_cache(const std::filesystem::path& dir) {
  const std::filesystem::path mpath = dir / "manifest.txt";
  if (!std::filesystem::exists(mpath))
    throw CacheError("no cache at " + dir.string() + " (missing manifest.txt)");
  std::istringstream in(detail::read_file(mpath));
  std::string line;
  if (!std::getline(in, line) || line != "golev-vardi-cache v1")
    throw CacheError("cache version mismatch in " + mpath.string() + ": '" +
                     line + "'");
  unsigned window = 0;
  std::string generated, content_hash;
  std::vector<std::pair<std::string, std::string>> files;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "window") {
      ls >> window;
    } else if (key == "generated") {
      ls >> generated;
    } else if (key == "content_hash") {
      ls >> content_hash;
    } else if (key == "file") {
      std::string name, hash;
      ls >> name >> hash;
      files.emplace_back(name, hash);
    } else {
      throw CacheError("corrupt cache: unknown manifest key '" + key + "'");
    }
  }
  if (window == 0 || files.size() != window)
    throw CacheError("corrupt cache: manifest lists " +
                     std::to_string(files.size()) + " files for window " +
                     std::to_string(window));

  std::vector<MPoly> polys;
  std::string blob;
  for (unsigned n = 1; n <= window; ++n) {
    const auto& [name, hash] = files[n - 1];
    if (name != "T" + std::to_string(n) + ".mpoly")
      throw CacheError("corrupt cache: unexpected file entry " + name);
    const std::string body = detail::read_file(dir / name);
    if (fnv1a64_hex(body) != hash)
      throw CacheError("hash mismatch for " + name +
                       ": cache is corrupt, regenerate it");
    try {
      polys.push_back(deserialize_mpoly(body));
    } catch (const ParseError& e) {
      throw CacheError("corrupt cache: " + name + ": " + e.what());
    }
    blob += serialize(polys.back());
  }
  if (fnv1a64_hex(blob) != content_hash)
    throw CacheError("content hash mismatch: cache is corrupt, regenerate it");

  VardiSet vs = VardiSet::from_cached(std::move(polys), generated);
  return vs;
}

// Loads a cache that must cover `window`; a smaller cache is an error that
// names the remedy.
inline VardiSet load_vardi_cache_at_least(const std::filesystem::path& dir,
                                          unsigned window) {
  VardiSet vs = load_vardi_cache(dir);
  if (vs.window() < window)
    throw CacheError("cache at " + dir.string() + " has window " +
                     std::to_string(vs.window()) + " but window " +
                     std::to_string(window) +
                     " was requested; extend it with the vardi gen command");
  return vs;
}

// Loads the cache if it covers `window`; otherwise generates (extending any
// cached lower levels) and saves.
inline VardiSet load_or_generate(const std::filesystem::path& dir,
                                 unsigned window,
                                 const VardiSet::ProgressFn& progress = {}) {
  VardiSet base;
  if (std::filesystem::exists(dir / "manifest.txt")) {
    base = load_vardi_cache(dir);
    if (base.window() >= window) return base;
  }
  VardiSet vs = VardiSet::extend(std::move(base), window, progress);
  save_vardi_cache(vs, dir);
  return vs;
}

}  // namespace golev
