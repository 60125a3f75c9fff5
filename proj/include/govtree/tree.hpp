#pragma once

// Interaction trees: lazily observed Ret / Tau / Vis nodes.
//
// A Tree<E, R> is an immutable handle. observe() computes the head node on
// demand; continuations are deferred, so infinite trees are represented
// finitely. Divergence is an explicit self-loop (spin()), which makes it
// detectable by identity: observing spin yields TauNode whose rest is the
// very same tree.
//
// Combinators canonicalize divergence: bind(spin, k) and interp(h, spin) are
// spin itself, so denial-by-divergence stays identity-detectable after any
// amount of composition.
//
// Events must provide `ValueKind answer_kind(const E&)` found by ADL.

#include <functional>
#include <memory>
#include <utility>
#include <variant>

#include "govtree/value.hpp"

namespace govtree {

template <class E, class R>
class Tree;

template <class E, class R>
using Continuation = std::function<Tree<E, R>(const Value&)>;

template <class E, class R>
struct RetNode {
  R value;
};

template <class E, class R>
struct TauNode {
  Tree<E, R> rest;
};

template <class E, class R>
struct VisNode {
  E event;
  Continuation<E, R> next;
};

template <class E, class R>
using Node = std::variant<RetNode<E, R>, TauNode<E, R>, VisNode<E, R>>;

// Interprets an E-event as a tree over F producing that event's answer.
template <class E, class F>
using Handler = std::function<Tree<F, Value>(const E&)>;

namespace detail {

template <class E, class R>
class TreeImpl {
 public:
  virtual ~TreeImpl() = default;
  virtual Node<E, R> observe(const Tree<E, R>& self) const = 0;
  virtual bool is_spin() const { return false; }
};

}  // namespace detail

template <class E, class R>
class Tree {
 public:
  using event_type = E;
  using result_type = R;

  explicit Tree(std::shared_ptr<const detail::TreeImpl<E, R>> impl)
      : impl_(std::move(impl)) {}

  Node<E, R> observe() const { return impl_->observe(*this); }

  // True only for the canonical divergent self-loop.
  bool is_spin() const { return impl_->is_spin(); }

  // Node identity, used for self-loop detection.
  bool same(const Tree& other) const { return impl_ == other.impl_; }

 private:
  std::shared_ptr<const detail::TreeImpl<E, R>> impl_;
};

namespace detail {

template <class E, class R>
class RetImpl final : public TreeImpl<E, R> {
 public:
  explicit RetImpl(R v) : value_(std::move(v)) {}
  Node<E, R> observe(const Tree<E, R>&) const override {
    return RetNode<E, R>{value_};
  }

 private:
  R value_;
};

template <class E, class R>
class TauImpl final : public TreeImpl<E, R> {
 public:
  explicit TauImpl(Tree<E, R> rest) : rest_(std::move(rest)) {}
  Node<E, R> observe(const Tree<E, R>&) const override {
    return TauNode<E, R>{rest_};
  }

 private:
  Tree<E, R> rest_;
};

template <class E, class R>
class VisImpl final : public TreeImpl<E, R> {
 public:
  VisImpl(E e, Continuation<E, R> k) : event_(std::move(e)), next_(std::move(k)) {}
  Node<E, R> observe(const Tree<E, R>&) const override {
    return VisNode<E, R>{event_, next_};
  }

 private:
  E event_;
  Continuation<E, R> next_;
};

template <class E, class R>
class SpinImpl final : public TreeImpl<E, R> {
 public:
  Node<E, R> observe(const Tree<E, R>& self) const override {
    return TauNode<E, R>{self};
  }
  bool is_spin() const override { return true; }
};

template <class E, class R>
class DeferImpl final : public TreeImpl<E, R> {
 public:
  explicit DeferImpl(std::function<Tree<E, R>()> make) : make_(std::move(make)) {}
  Node<E, R> observe(const Tree<E, R>&) const override { return make_().observe(); }

 private:
  std::function<Tree<E, R>()> make_;
};

}  // namespace detail

template <class E, class R>
Tree<E, R> ret(R v) {
  return Tree<E, R>(std::make_shared<detail::RetImpl<E, R>>(std::move(v)));
}

template <class E, class R>
Tree<E, R> tau(Tree<E, R> rest) {
  return Tree<E, R>(std::make_shared<detail::TauImpl<E, R>>(std::move(rest)));
}

template <class E, class R>
Tree<E, R> vis(E e, Continuation<E, R> k) {
  return Tree<E, R>(std::make_shared<detail::VisImpl<E, R>>(std::move(e), std::move(k)));
}

template <class E, class R>
Tree<E, R> spin() {
  return Tree<E, R>(std::make_shared<detail::SpinImpl<E, R>>());
}

// Builds the tree only when first observed; used for recursive definitions.
template <class E, class R>
Tree<E, R> defer(std::function<Tree<E, R>()> make) {
  return Tree<E, R>(std::make_shared<detail::DeferImpl<E, R>>(std::move(make)));
}

// Vis(e, ret): performs e and returns its answer.
template <class E>
Tree<E, Value> trigger(E e) {
  return vis<E, Value>(std::move(e), [](const Value& x) { return ret<E, Value>(x); });
}

template <class E, class A, class B>
Tree<E, B> bind(Tree<E, A> t, std::function<Tree<E, B>(const A&)> k);

namespace detail {

template <class E, class A, class B>
class BindImpl final : public TreeImpl<E, B> {
 public:
  BindImpl(Tree<E, A> t, std::function<Tree<E, B>(const A&)> k)
      : inner_(std::move(t)), next_(std::move(k)) {}

  Node<E, B> observe(const Tree<E, B>&) const override {
    Node<E, A> n = inner_.observe();
    if (auto* r = std::get_if<RetNode<E, A>>(&n)) {
      return next_(r->value).observe();
    }
    if (auto* t = std::get_if<TauNode<E, A>>(&n)) {
      return TauNode<E, B>{bind<E, A, B>(t->rest, next_)};
    }
    auto& v = std::get<VisNode<E, A>>(n);
    auto inner_k = v.next;
    auto outer_k = next_;
    return VisNode<E, B>{v.event, [inner_k, outer_k](const Value& x) {
                           return bind<E, A, B>(inner_k(x), outer_k);
                         }};
  }

 private:
  Tree<E, A> inner_;
  std::function<Tree<E, B>(const A&)> next_;
};

}  // namespace detail

// Sequential composition: run t to Ret(a), then continue with k(a).
template <class E, class A, class B>
Tree<E, B> bind(Tree<E, A> t, std::function<Tree<E, B>(const A&)> k) {
  if (t.is_spin()) return spin<E, B>();
  return Tree<E, B>(
      std::make_shared<detail::BindImpl<E, A, B>>(std::move(t), std::move(k)));
}

// Deduces A from the tree and B from the continuation's return type.
template <class E, class A, class K>
auto then(Tree<E, A> t, K&& k) {
  using Out = std::invoke_result_t<K, const A&>;
  using B = typename Out::result_type;
  return bind<E, A, B>(std::move(t), std::function<Out(const A&)>(std::forward<K>(k)));
}

// Applies f to the result without touching the event structure.
template <class E, class A, class F>
auto map_result(Tree<E, A> t, F&& f) {
  using B = std::invoke_result_t<F, const A&>;
  return bind<E, A, B>(std::move(t), [f = std::forward<F>(f)](const A& a) {
    return ret<E, B>(f(a));
  });
}

template <class E, class F, class R>
Tree<F, R> interp(Handler<E, F> h, Tree<E, R> t);

namespace detail {

// Replaces each Vis(e, k) with Tau(bind(h(e), interp(h, k(.)))). The answer
// produced by h(e) is checked against e's declared answer kind.
template <class E, class F, class R>
class InterpImpl final : public TreeImpl<F, R> {
 public:
  InterpImpl(Handler<E, F> h, Tree<E, R> t) : handler_(std::move(h)), tree_(std::move(t)) {}

  Node<F, R> observe(const Tree<F, R>&) const override {
    Node<E, R> n = tree_.observe();
    if (auto* r = std::get_if<RetNode<E, R>>(&n)) {
      return RetNode<F, R>{r->value};
    }
    if (auto* t = std::get_if<TauNode<E, R>>(&n)) {
      return TauNode<F, R>{interp<E, F, R>(handler_, t->rest)};
    }
    auto& v = std::get<VisNode<E, R>>(n);
    const ValueKind expected = answer_kind(v.event);
    auto h = handler_;
    auto k = v.next;
    std::function<Tree<F, R>(const Value&)> resume = [h, k, expected](const Value& x) {
      expect_kind(expected, x, "interp: handler result");
      return interp<E, F, R>(h, k(x));
    };
    return TauNode<F, R>{bind<F, Value, R>(handler_(v.event), std::move(resume))};
  }

 private:
  Handler<E, F> handler_;
  Tree<E, R> tree_;
};

// Renames events one-for-one; no Tau is inserted.
template <class E, class F, class R>
class TranslateImpl final : public TreeImpl<F, R> {
 public:
  TranslateImpl(std::function<F(const E&)> f, Tree<E, R> t)
      : rename_(std::move(f)), tree_(std::move(t)) {}

  Node<F, R> observe(const Tree<F, R>&) const override;

 private:
  std::function<F(const E&)> rename_;
  Tree<E, R> tree_;
};

}  // namespace detail

template <class E, class F, class R>
Tree<F, R> interp(Handler<E, F> h, Tree<E, R> t) {
  if (t.is_spin()) return spin<F, R>();
  return Tree<F, R>(
      std::make_shared<detail::InterpImpl<E, F, R>>(std::move(h), std::move(t)));
}

template <class E, class F, class R>
Tree<F, R> translate_events(std::function<F(const E&)> f, Tree<E, R> t) {
  if (t.is_spin()) return spin<F, R>();
  return Tree<F, R>(
      std::make_shared<detail::TranslateImpl<E, F, R>>(std::move(f), std::move(t)));
}

template <class E, class F, class R>
Node<F, R> detail::TranslateImpl<E, F, R>::observe(const Tree<F, R>&) const {
  Node<E, R> n = tree_.observe();
  if (auto* r = std::get_if<RetNode<E, R>>(&n)) return RetNode<F, R>{r->value};
  if (auto* t = std::get_if<TauNode<E, R>>(&n)) {
    return TauNode<F, R>{translate_events<E, F, R>(rename_, t->rest)};
  }
  auto& v = std::get<VisNode<E, R>>(n);
  auto f = rename_;
  auto k = v.next;
  return VisNode<F, R>{rename_(v.event), [f, k](const Value& x) {
                         return translate_events<E, F, R>(f, k(x));
                       }};
}

}  // namespace govtree
