//@ ABS def Int fib(Int n) = if n <= 2 then 1
//@                               else fib(n-1) + fib(n-2);

/*@ strong global invariant x == 0 || x == 1; @*/ int x;

//@ ensures \result == val;
int id_set_x(const int val)
{ x=1; return val; }
//@ ensures \result == 1 || \result == 2;
int one_or_two(void) {
    x=0;
    return x + id_set_x(1);
}
//@ ensures \result == val - 1 || \result == val;
int pred_or_id(const int val) {
    x=0;
    return val - x + id_set_x(0);
}
//@ ensures \result >= 1 && \result <= fib(n);
int one_to_fib(const int n) {
    if (n > 3)
        return one_to_fib(n-2)
            + pred_or_id(one_to_fib(n-1));
    else if (n == 3) return one_or_two();
    else return 1; }
