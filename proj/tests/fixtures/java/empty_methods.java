class E {
    void a() {}

    void b() {}
}
