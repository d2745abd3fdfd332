#include "critters/service/http_server.hpp"

#include <algorithm>
#include <cctype>

#include "httplib.h"

namespace critters::service {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void dispatch(GameService& service, const httplib::Request& in, httplib::Response& out) {
  ApiRequest req;
  req.method = in.method;
  req.path = in.path;
  req.body = in.body;
  for (const auto& [k, v] : in.params) req.query.emplace(k, v);
  for (const auto& [k, v] : in.headers) req.headers.emplace(lower(k), v);
  const auto res = service.handle(req);
  out.status = res.status;
  out.set_content(res.body.dump(), "application/json");
}

}  // namespace

void mount(httplib::Server& server, GameService& service) {
  auto h = [&service](const httplib::Request& in, httplib::Response& out) { dispatch(service, in, out); };
  server.Get(R"(/api/.*)", h);
  server.Post(R"(/api/.*)", h);
  server.Put(R"(/api/.*)", h);
  server.Delete(R"(/api/.*)", h);
  server.set_exception_handler([](const httplib::Request&, httplib::Response& out, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    out.status = 500;
    out.set_content(nlohmann::json{{"error", {{"code", "Internal"}, {"message", what}}}}.dump(), "application/json");
  });
}

bool serve(GameService& service, const std::string& host, int port) {
  httplib::Server server;
  mount(server, service);
  return server.listen(host, port);
}

}  // namespace critters::service
